//! How often the mixture price falls below the BSM price with the matching
//! variance `p a1^2 + (1 - p) a2^2`, over a grid of mixing weights.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use bayes_pricer::models::{bsm_price, mixture_price, GbmSpec, MixtureSpec};
use bayes_pricer::pricing::MarketParams;
use bayes_pricer::Result;

use crate::output::significant;

pub const S0: f64 = 60.0;
pub const STRIKE: f64 = 70.0;
pub const A1: f64 = 1.0;
pub const A2: [f64; 4] = [1.05, 1.2, 2.0, 4.0];
pub const MATURITIES: [f64; 6] = [0.03, 0.05, 0.1, 0.15, 0.2, 0.5];
/// Weights `p = j/50` for `j = 0..=50`.
pub const WEIGHTS: usize = 51;

pub const GRID_NOTE: &str = "fractions over 51 mixing weights p = j/50, j = 0..50 \
     (the reference tables have denominator 51 although their description lists j = 1..50)";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    pub interest: f64,
    #[serde(rename = "T")]
    pub maturity: f64,
    pub a2: f64,
    /// Number of weights with mixture price strictly below BSM.
    pub count: usize,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub which: u8,
    pub interest: f64,
    pub note: String,
    /// Row-major: maturities outer, `a2` inner.
    pub cells: Vec<TableCell>,
}

pub fn interest_of(which: u8) -> Option<f64> {
    match which {
        1 => Some(0.04),
        2 => Some(0.08),
        _ => None,
    }
}

pub fn weight(j: usize) -> f64 {
    j as f64 / (WEIGHTS - 1) as f64
}

/// Mixture price and its BSM comparator at one grid point.
///
/// At `p = 0` and `p = 1` one component is left and the mixture law is the
/// GBM law, so both prices come from the same formula and tie exactly.
pub fn compare(interest: f64, maturity: f64, a2: f64, p: f64) -> Result<(f64, f64)> {
    let market = MarketParams::new(S0, STRIKE, interest, 0.0, maturity)?;
    let sigma = (p * A1 * A1 + (1.0 - p) * a2 * a2).sqrt();
    let bsm = bsm_price(&GbmSpec { sigma }, &market);
    if p == 0.0 || p == 1.0 {
        return Ok((bsm, bsm));
    }
    let mixture = MixtureSpec {
        weights: vec![p, 1.0 - p],
        scales: vec![A1, a2],
    };
    Ok((mixture_price(&mixture, &market)?, bsm))
}

/// Sweep every `(T, a2, p)` triple in parallel; cells come back in index order.
pub fn table(which: u8) -> Result<Table> {
    let interest = interest_of(which)
        .ok_or_else(|| bayes_pricer::Error::InvalidParams(format!("there are tables 1 and 2, not {which}")))?;
    let triples: Vec<(f64, f64, f64)> = MATURITIES
        .iter()
        .flat_map(|&t| A2.iter().flat_map(move |&a2| (0..WEIGHTS).map(move |j| (t, a2, weight(j)))))
        .collect();
    let below: Vec<bool> = triples
        .par_iter()
        .map(|&(t, a2, p)| compare(interest, t, a2, p).map(|(b, bsm)| b < bsm))
        .collect::<Result<_>>()?;
    let cells = below
        .chunks(WEIGHTS)
        .zip(triples.chunks(WEIGHTS))
        .map(|(flags, group)| {
            let count = flags.iter().filter(|&&f| f).count();
            TableCell {
                interest,
                maturity: group[0].0,
                a2: group[0].1,
                count,
                fraction: count as f64 / WEIGHTS as f64,
            }
        })
        .collect();
    Ok(Table {
        which,
        interest,
        note: GRID_NOTE.to_string(),
        cells,
    })
}

impl Table {
    pub fn cell(&self, maturity: f64, a2: f64) -> Option<&TableCell> {
        self.cells.iter().find(|c| c.maturity == maturity && c.a2 == a2)
    }

    /// The layout of the reference tables, fractions to 7 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "HOW OFTEN B-PRICE < B-S-M PRICE, i={}\n# {}\n",
            self.interest, self.note
        );
        out.push_str(&format!("{:<8}", "T"));
        for a2 in A2 {
            out.push_str(&format!("{:>14}", format!("a2={a2}")));
        }
        out.push('\n');
        for row in self.cells.chunks(A2.len()) {
            out.push_str(&format!("{:<8}", row[0].maturity));
            for c in row {
                out.push_str(&format!("{:>14}", significant(c.fraction, 7)));
            }
            out.push('\n');
        }
        out
    }
}
