use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::verify::{verify, Mode, Verdict};
use super::EquilibriumError;
use crate::model::{int, pow, rational_serde, GameParams, Rational};
use crate::strategies::ProfileFamily;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanPoint {
    #[serde(with = "rational_serde")]
    pub psi: Rational,
    pub verdict: Verdict,
}

/// Bracket `[lo, hi]` on the noise level where the lowest pass-to-fail
/// change of the scan sits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalPsiReport {
    pub family: String,
    pub n: u32,
    /// Largest noise found to verify.
    #[serde(with = "rational_serde")]
    pub lo: Rational,
    /// Smallest noise above `lo` found to fail; `1` when no scanned point failed.
    #[serde(with = "rational_serde")]
    pub hi: Rational,
    pub scan: Vec<ScanPoint>,
    /// Consecutive scan points with different verdicts.
    pub transitions: Vec<(ScanPoint, ScanPoint)>,
    /// At most one verdict change and it goes from pass to fail.
    pub monotone: bool,
    pub bisection_steps: u32,
}

/// `0` followed by `2^-k` for `k = resolution - 1, ..., 1`.
pub fn scan_grid(resolution: u32) -> Vec<Rational> {
    let half = Rational::new(1.into(), 2.into());
    std::iter::once(Rational::zero())
        .chain((1..resolution).rev().map(|k| pow(&half, k)))
        .collect()
}

fn passes(
    params: &GameParams,
    family: ProfileFamily,
    n: u32,
    psi: &Rational,
) -> Result<bool, EquilibriumError> {
    let profile = family.profile(n)?;
    let cert = verify(&params.with_psi(psi.clone()), &profile, Mode::Weak)?;
    Ok(cert.verdict == Verdict::Equilibrium)
}

/// Scans the noise level on a geometric grid and bisects the first
/// pass-to-fail change down to width `2^-resolution`.
pub fn critical_psi(
    params: &GameParams,
    family: ProfileFamily,
    n: u32,
    resolution: u32,
) -> Result<CriticalPsiReport, EquilibriumError> {
    if resolution < 16 {
        return Err(EquilibriumError::ResolutionTooSmall(resolution));
    }
    let grid = scan_grid(resolution);
    let verdicts: Vec<bool> = grid
        .par_iter()
        .map(|psi| passes(params, family, n, psi))
        .collect::<Result<_, _>>()?;
    let scan: Vec<ScanPoint> = grid
        .iter()
        .zip(&verdicts)
        .map(|(psi, ok)| ScanPoint {
            psi: psi.clone(),
            verdict: if *ok {
                Verdict::Equilibrium
            } else {
                Verdict::NotEquilibrium
            },
        })
        .collect();
    let transitions: Vec<(ScanPoint, ScanPoint)> = scan
        .windows(2)
        .filter(|w| w[0].verdict != w[1].verdict)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    let first_pass = verdicts
        .iter()
        .position(|ok| *ok)
        .ok_or(EquilibriumError::NoEquilibrium)?;
    let monotone = first_pass == 0 && transitions.len() <= 1;

    let first_fail = (first_pass..grid.len()).find(|&i| !verdicts[i]);
    let (mut lo, mut hi) = match first_fail {
        Some(i) => (grid[i - 1].clone(), grid[i].clone()),
        None => (grid[grid.len() - 1].clone(), Rational::one()),
    };
    let width = pow(&Rational::new(1.into(), 2.into()), resolution);
    let mut bisection_steps = 0;
    while &hi - &lo > width {
        let mid = (&lo + &hi) / int(2);
        if passes(params, family, n, &mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
        bisection_steps += 1;
    }
    Ok(CriticalPsiReport {
        family: family.name().to_string(),
        n,
        lo,
        hi,
        scan,
        transitions,
        monotone,
        bisection_steps,
    })
}
