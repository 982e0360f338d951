//! Flat `key = value` run configuration.
//!
//! ```text
//! # equal-weight two-component mixture
//! model    = mixture
//! weights  = 0.5, 0.5
//! scales   = 1, 2
//! s0 = 60
//! strike = 70
//! interest = 0.04
//! T = 0.1
//! ```
//!
//! Numbers may be written as fractions (`1/3`). `t0` defaults to 0.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use bayes_pricer::measures::DiscretePriceLaw;
use bayes_pricer::models::{GbmSpec, HyperbolicSpec, MixtureSpec, ModelSpec};
use bayes_pricer::numerics::QuadratureSpec;
use bayes_pricer::pricing::MarketParams;

use crate::output::Format;

const MARKET_KEYS: [&str; 5] = ["s0", "strike", "interest", "t0", "T"];
const TOLERANCE_KEYS: [&str; 4] = ["abs_tol", "rel_tol", "max_subdivisions", "truncation_bound"];
const MODEL_KEYS: [(&str, &[&str]); 4] = [
    ("gbm", &["sigma"]),
    ("mixture", &["weights", "scales"]),
    ("hyperbolic", &["zeta", "delta"]),
    ("discrete", &["atoms"]),
];

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            message: message.into(),
        }
    }

    fn general(message: impl Into<String>) -> Self {
        Self {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelSpec,
    pub market: MarketParams,
    pub quadrature: QuadratureSpec,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::general(format!("cannot read {}: {e}", path.display())))?;
        text.parse()
    }
}

struct Entry {
    line: usize,
    value: String,
}

struct Entries(HashMap<String, Entry>);

impl Entries {
    fn line(&self, key: &str) -> Option<usize> {
        self.0.get(key).map(|e| e.line)
    }

    fn required(&self, key: &str) -> Result<&Entry, ConfigError> {
        self.0
            .get(key)
            .ok_or_else(|| ConfigError::general(format!("missing required key `{key}`")))
    }

    fn number(&self, key: &str) -> Result<f64, ConfigError> {
        let e = self.required(key)?;
        parse_number(&e.value).map_err(|m| ConfigError::at(e.line, format!("`{key}`: {m}")))
    }

    fn number_or(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        if self.0.contains_key(key) {
            self.number(key)
        } else {
            Ok(default)
        }
    }

    fn list(&self, key: &str) -> Result<Vec<f64>, ConfigError> {
        let e = self.required(key)?;
        e.value
            .split(',')
            .map(|v| parse_number(v).map_err(|m| ConfigError::at(e.line, format!("`{key}`: {m}"))))
            .collect()
    }
}

fn parse_number(raw: &str) -> Result<f64, String> {
    let raw = raw.trim();
    let value = match raw.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| format!("`{raw}` is not a number"))?;
            let d: f64 = d.trim().parse().map_err(|_| format!("`{raw}` is not a number"))?;
            n / d
        }
        None => raw.parse().map_err(|_| format!("`{raw}` is not a number"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{raw}` is not finite"))
    }
}

fn parse_atoms(entry: &Entry) -> Result<Vec<(f64, f64)>, ConfigError> {
    entry
        .value
        .split(';')
        .filter(|a| !a.trim().is_empty())
        .map(|atom| {
            let (s, p) = atom
                .split_once(':')
                .ok_or_else(|| ConfigError::at(entry.line, format!("atom `{}` is not price:prob", atom.trim())))?;
            let s = parse_number(s).map_err(|m| ConfigError::at(entry.line, format!("`atoms`: {m}")))?;
            let p = parse_number(p).map_err(|m| ConfigError::at(entry.line, format!("`atoms`: {m}")))?;
            Ok((s, p))
        })
        .collect()
}

fn tokenize(text: &str) -> Result<Entries, ConfigError> {
    let mut map: HashMap<String, Entry> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| ConfigError::at(line, format!("expected `key = value`, got `{content}`")))?;
        let key = key.trim();
        let value = value.trim();
        let known = key == "model"
            || key == "format"
            || MARKET_KEYS.contains(&key)
            || TOLERANCE_KEYS.contains(&key)
            || MODEL_KEYS.iter().any(|(_, keys)| keys.contains(&key));
        if !known {
            return Err(ConfigError::at(line, format!("unknown key `{key}`")));
        }
        if value.is_empty() {
            return Err(ConfigError::at(line, format!("`{key}` has no value")));
        }
        if let Some(first) = map.get(key) {
            return Err(ConfigError::at(
                line,
                format!("`{key}` already set on line {}", first.line),
            ));
        }
        map.insert(
            key.to_string(),
            Entry {
                line,
                value: value.to_string(),
            },
        );
    }
    Ok(Entries(map))
}

fn parse_model(entries: &Entries) -> Result<ModelSpec, ConfigError> {
    let model_entry = entries.required("model")?;
    let name = model_entry.value.to_ascii_lowercase();
    let Some((_, own)) = MODEL_KEYS.iter().find(|(n, _)| *n == name) else {
        return Err(ConfigError::at(
            model_entry.line,
            format!("unknown model `{}` (expected gbm, mixture, hyperbolic or discrete)", model_entry.value),
        ));
    };
    for (other, keys) in MODEL_KEYS.iter().filter(|(n, _)| *n != name) {
        for key in keys.iter().filter(|k| !own.contains(k)) {
            if let Some(line) = entries.line(key) {
                return Err(ConfigError::at(
                    line,
                    format!("`{key}` belongs to model {other}, not {name}"),
                ));
            }
        }
    }
    let (model, blame) = match name.as_str() {
        "gbm" => (
            ModelSpec::Gbm(GbmSpec {
                sigma: entries.number("sigma")?,
            }),
            "sigma",
        ),
        "mixture" => (
            ModelSpec::Mixture(MixtureSpec {
                weights: entries.list("weights")?,
                scales: entries.list("scales")?,
            }),
            "weights",
        ),
        "hyperbolic" => (
            ModelSpec::Hyperbolic(HyperbolicSpec {
                zeta: entries.number("zeta")?,
                delta: entries.number("delta")?,
            }),
            "delta",
        ),
        _ => {
            let e = entries.required("atoms")?;
            let law = DiscretePriceLaw::new(parse_atoms(e)?).map_err(|err| ConfigError::at(e.line, err.to_string()))?;
            (ModelSpec::Discrete(law), "atoms")
        }
    };
    model.validate().map_err(|err| ConfigError {
        line: entries.line(blame),
        message: err.to_string(),
    })?;
    Ok(model)
}

fn parse_market(entries: &Entries) -> Result<MarketParams, ConfigError> {
    let market = MarketParams {
        s0: entries.number("s0")?,
        strike: entries.number("strike")?,
        interest: entries.number("interest")?,
        t0: entries.number_or("t0", 0.0)?,
        maturity: entries.number("T")?,
    };
    let checks = [
        ("s0", market.s0 > 0.0, "must be positive"),
        ("strike", market.strike > 0.0, "must be positive"),
        ("interest", market.interest > -1.0, "must exceed -1"),
        ("T", market.maturity > market.t0, "must exceed t0"),
    ];
    for (key, ok, what) in checks {
        if !ok {
            return Err(ConfigError {
                line: entries.line(key),
                message: format!("`{key}` {what}"),
            });
        }
    }
    Ok(market)
}

fn parse_quadrature(entries: &Entries) -> Result<QuadratureSpec, ConfigError> {
    let base = QuadratureSpec::default();
    let max_subdivisions = match entries.0.get("max_subdivisions") {
        Some(e) => e
            .value
            .parse::<usize>()
            .map_err(|_| ConfigError::at(e.line, format!("`max_subdivisions`: `{}` is not a count", e.value)))?,
        None => base.max_subdivisions,
    };
    let spec = QuadratureSpec {
        abs_tol: entries.number_or("abs_tol", base.abs_tol)?,
        rel_tol: entries.number_or("rel_tol", base.rel_tol)?,
        max_subdivisions,
        truncation_bound: entries.number_or("truncation_bound", base.truncation_bound)?,
    };
    spec.validate().map_err(|err| ConfigError {
        line: TOLERANCE_KEYS.iter().find_map(|k| entries.line(k)),
        message: err.to_string(),
    })?;
    Ok(spec)
}

impl std::str::FromStr for RunConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, ConfigError> {
        let entries = tokenize(text)?;
        let format = match entries.0.get("format") {
            Some(e) => Some(
                e.value
                    .parse::<Format>()
                    .map_err(|m| ConfigError::at(e.line, m))?,
            ),
            None => None,
        };
        Ok(Self {
            model: parse_model(&entries)?,
            market: parse_market(&entries)?,
            quadrature: parse_quadrature(&entries)?,
            format,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MIXTURE: &str = "\
# equal-weight two-component mixture
model = mixture
weights = 0.5, 0.5
scales = 1, 2   # a1, a2
s0 = 60
strike = 70
interest = 0.04
T = 0.1
";

    #[test]
    fn parses_mixture() {
        let c: RunConfig = MIXTURE.parse().unwrap();
        assert_eq!(
            c.model,
            ModelSpec::Mixture(MixtureSpec {
                weights: vec![0.5, 0.5],
                scales: vec![1.0, 2.0]
            })
        );
        assert_eq!(c.market, MarketParams::new(60.0, 70.0, 0.04, 0.0, 0.1).unwrap());
        assert_eq!(c.quadrature, QuadratureSpec::default());
        assert_eq!(c.format, None);
    }

    #[test]
    fn parses_atoms_and_fractions() {
        let c: RunConfig = "model = discrete\natoms = 2:1/3; 0.5:2/3\ns0=1\nstrike=1\ninterest=0\nT=1\n"
            .parse()
            .unwrap();
        let ModelSpec::Discrete(law) = c.model else { panic!() };
        assert_eq!(law.atoms(), &[(0.5, 2.0 / 3.0), (2.0, 1.0 / 3.0)]);
    }

    #[test]
    fn tolerance_overrides() {
        let text = format!("{MIXTURE}abs_tol = 1e-12\nmax_subdivisions = 50\nformat = csv\n");
        let c: RunConfig = text.parse().unwrap();
        assert_eq!(c.quadrature.abs_tol, 1e-12);
        assert_eq!(c.quadrature.max_subdivisions, 50);
        assert_eq!(c.format, Some(Format::Csv));
    }

    fn err(text: &str) -> ConfigError {
        text.parse::<RunConfig>().unwrap_err()
    }

    #[test]
    fn unknown_key_reports_its_line() {
        let e = err(&format!("{MIXTURE}volatility = 3\n"));
        assert_eq!(e.line, Some(9));
        assert!(e.to_string().starts_with("line 9: unknown key `volatility`"), "{e}");
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(err(&MIXTURE.replace("s0 = 60", "s0 = abc")).line, Some(5));
        assert_eq!(err(&MIXTURE.replace("s0 = 60", "s0 = -1")).line, Some(5));
        assert_eq!(err(&MIXTURE.replace("weights = 0.5, 0.5", "weights = 0.5, 0.4")).line, Some(3));
        assert_eq!(err(&format!("{MIXTURE}s0 = 61\n")).line, Some(9));
        assert_eq!(err(&format!("{MIXTURE}sigma = 0.2\n")).line, Some(9));
        assert_eq!(err(&format!("{MIXTURE}T = \n")).line, Some(9));
        assert_eq!(err(&MIXTURE.replace("model = mixture", "model = heston")).line, Some(2));
        assert_eq!(err(&MIXTURE.replace("T = 0.1", "T 0.1")).line, Some(8));
        assert_eq!(err("model = hyperbolic\nzeta = 1\ndelta = 2\ns0=1\nstrike=1\ninterest=0\nT=1").line, Some(3));
    }

    #[test]
    fn missing_key_has_no_line() {
        let e = err(&MIXTURE.replace("strike = 70\n", ""));
        assert_eq!(e.line, None);
        assert!(e.message.contains("strike"));
    }
}
