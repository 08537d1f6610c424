//! Named collections of exact identity instances.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rug::Rational;

use crate::error::{Error, Result};
use crate::exact::{harmonic_from_stirlings, harmonic_number, srst, stirling_from_partitions};
use crate::identity::IdentityCheck;
use crate::norlund::{bernoulli_poly_link, norlund_product_formula, stirling_link};
use crate::polylog::{
    bernoulli_conjecture, bernoulli_identity_one, binomial_harmonic_identity, harmonic_power_identity,
    log_power_identity, s11_coefficient_identity, s12_coefficient_identity, s12_reduced_identity, t_numbers,
    t_numbers_by_definition,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    StirlingHarmonic,
    BernoulliOne,
    BernoulliConjecture,
    HarmonicPower,
    NorlundProduct,
    BernoulliPolyLink,
    LogPowerSeries,
    BinomialHarmonic,
    S11,
    S12,
    S12Reduced,
    StirlingLink,
    TNumbers,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::StirlingHarmonic,
        Suite::BernoulliOne,
        Suite::BernoulliConjecture,
        Suite::HarmonicPower,
        Suite::NorlundProduct,
        Suite::BernoulliPolyLink,
        Suite::LogPowerSeries,
        Suite::BinomialHarmonic,
        Suite::S11,
        Suite::S12,
        Suite::S12Reduced,
        Suite::StirlingLink,
        Suite::TNumbers,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::StirlingHarmonic => "stirling-harmonic",
            Suite::BernoulliOne => "bernoulli-one",
            Suite::BernoulliConjecture => "bernoulli-conjecture",
            Suite::HarmonicPower => "harmonic-power",
            Suite::NorlundProduct => "norlund-product",
            Suite::BernoulliPolyLink => "bernoulli-poly-link",
            Suite::LogPowerSeries => "log-power-series",
            Suite::BinomialHarmonic => "binomial-harmonic",
            Suite::S11 => "s11-coefficients",
            Suite::S12 => "s12-coefficients",
            Suite::S12Reduced => "s12-reduced",
            Suite::StirlingLink => "stirling-link",
            Suite::TNumbers => "t-numbers",
        }
    }

    /// Default ranges `(max_p, max_n)`; `max_p` doubles as `max_r`, `max_g`
    /// or `max_j` where the suite is indexed that way.
    pub fn defaults(self) -> (u64, u64) {
        match self {
            Suite::StirlingHarmonic => (12, 60),
            Suite::BernoulliOne => (0, 200),
            Suite::BernoulliConjecture => (150, 0),
            Suite::HarmonicPower => (4, 50),
            Suite::NorlundProduct => (0, 12),
            Suite::BernoulliPolyLink => (0, 30),
            Suite::LogPowerSeries => (4, 30),
            Suite::BinomialHarmonic => (40, 0),
            Suite::S11 => (0, 60),
            Suite::S12 => (0, 60),
            Suite::S12Reduced => (60, 0),
            Suite::StirlingLink => (6, 30),
            Suite::TNumbers => (6, 8),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Domain(format!("unknown suite `{s}` (one of {})", names.join(", ")))
            })
    }
}

/// Range overrides for [`run_suite`].
#[derive(Debug, Clone, Copy, Default)]
pub struct SuiteParams {
    pub max_p: Option<u64>,
    pub max_n: Option<u64>,
    /// Order `k` for the Bernoulli-polynomial link (default 1).
    pub k: Option<u32>,
}

const NORLUND_ALPHAS: [(i64, i64); 7] = [(-3, 1), (-1, 2), (0, 1), (1, 3), (1, 1), (5, 2), (7, 1)];

/// All instances of `suite`, in canonical parameter order.
pub fn run_suite(suite: Suite, params: SuiteParams) -> Result<Vec<IdentityCheck>> {
    let (dp, dn) = suite.defaults();
    let max_p = params.max_p.unwrap_or(dp);
    let max_n = params.max_n.unwrap_or(dn);
    let grid = |p0: u64, n0: u64| -> Vec<(u64, u64)> {
        (p0..=max_p).flat_map(|p| (n0..=max_n).map(move |n| (p, n))).collect()
    };
    let expand = |v: Vec<Result<Vec<IdentityCheck>>>| -> Result<Vec<IdentityCheck>> {
        let mut out = Vec::new();
        for r in v {
            out.extend(r?);
        }
        Ok(out)
    };
    match suite {
        Suite::StirlingHarmonic => expand(
            grid(1, 0)
                .par_iter()
                .map(|&(r, n)| {
                    let r32 = r as u32;
                    let ps = [("r", r as i64), ("n", n as i64)];
                    let a = IdentityCheck::new(
                        "stirling_from_harmonic",
                        ps.to_vec(),
                        stirling_from_partitions(r32, n),
                        srst(r as i64, 1, n as i64),
                    );
                    let b = IdentityCheck::new(
                        "harmonic_from_stirling",
                        ps.to_vec(),
                        harmonic_from_stirlings(r32, n)?,
                        harmonic_number(n, r32),
                    );
                    Ok(vec![a, b])
                })
                .collect(),
        ),
        Suite::BernoulliOne => (2..=max_n).into_par_iter().map(bernoulli_identity_one).collect(),
        Suite::BernoulliConjecture => (2..=max_p).into_par_iter().map(bernoulli_conjecture).collect(),
        Suite::HarmonicPower => grid(1, 2).par_iter().map(|&(p, n)| harmonic_power_identity(p as u32, n)).collect(),
        Suite::NorlundProduct => {
            let cells: Vec<(u64, (i64, i64))> =
                (0..=max_n).flat_map(|n| NORLUND_ALPHAS.into_iter().map(move |a| (n, a))).collect();
            Ok(cells
                .par_iter()
                .map(|&(n, (num, den))| {
                    let mut c = norlund_product_formula(n as usize, &Rational::from((num, den)));
                    c.params.push(("alpha_num", num));
                    c.params.push(("alpha_den", den));
                    c
                })
                .collect())
        }
        Suite::BernoulliPolyLink => bernoulli_poly_link(params.k.unwrap_or(1), max_n as usize),
        Suite::LogPowerSeries => {
            expand((1..=max_p).into_par_iter().map(|p| log_power_identity(p as u32, max_n as usize)).collect())
        }
        Suite::BinomialHarmonic => expand(
            (1..=max_p)
                .into_par_iter()
                .map(|p| binomial_harmonic_identity(p).map(|a| a.to_vec()))
                .collect(),
        ),
        Suite::S11 => (1..=max_n).into_par_iter().map(s11_coefficient_identity).collect(),
        Suite::S12 => (1..=max_n).into_par_iter().map(s12_coefficient_identity).collect(),
        Suite::S12Reduced => (1..=max_p).into_par_iter().map(s12_reduced_identity).collect(),
        Suite::StirlingLink => grid(1, 0).par_iter().map(|&(g, n)| stirling_link(g as u32, n as usize)).collect(),
        Suite::TNumbers => grid(3, 1)
            .par_iter()
            .map(|&(j, n)| {
                let lhs = t_numbers(j as u32, n)?;
                let rhs = t_numbers_by_definition(j as u32, n)?;
                Ok(IdentityCheck::new("t_numbers", vec![("j", j as i64), ("n", n as i64)], lhs, rhs))
            })
            .collect(),
    }
}
