use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::finder::find_positive_expectation;
use super::subspace::{build_subspace, FamilyTag};
use crate::error::{Error, Result};
use crate::maps::KrausPairMap;
use crate::random::{random_psd, substream};
use crate::tolerance::ToleranceConfig;

/// Relative bound on the part of the untransposed witness outside `𝒲(𝒱)`.
const SUPPORT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    CertifiedIndecomposable,
    CriterionNotSatisfied,
    Inapplicable,
}

/// Outcome of the coefficient-spectrum criterion.
///
/// The verdict is licensed by `family`: for the antisymmetric and Piani-sum
/// families the existence of a positive `⟨ψ|Q^{T_B}|ψ⟩` on `𝒲(𝒱)⊥` holds for
/// every PSD `Q` analytically. The sampled trials are regression evidence for
/// the finder, not a proof.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndecomposabilityCertificate {
    pub map_id: String,
    pub verdict: Verdict,
    pub min_l_eigenvalue: f64,
    pub l_spectrum: Vec<f64>,
    pub family: FamilyTag,
    pub support_check: bool,
    pub support_residual: f64,
    pub trials: usize,
    pub failures: usize,
    /// Smallest finder value over all trials (`null` when no trial ran).
    pub min_finder_value: Option<f64>,
    pub seed: u64,
}

impl IndecomposabilityCertificate {
    /// Checks the internal consistency of a deserialised certificate.
    pub fn validate(&self, tol: &ToleranceConfig) -> Result<()> {
        let fail = |msg: &str| Err(Error::InvalidParameter(format!("certificate: {msg}")));
        let spectrum_min = self.l_spectrum.iter().copied().fold(f64::INFINITY, f64::min);
        if !self.l_spectrum.is_empty() && spectrum_min != self.min_l_eigenvalue {
            return fail("min_l_eigenvalue is not the minimum of l_spectrum");
        }
        if self.failures > self.trials {
            return fail("more failures than trials");
        }
        match self.verdict {
            Verdict::CertifiedIndecomposable => {
                if !(self.min_l_eigenvalue < -tol.equality) {
                    return fail("certified without a negative coefficient eigenvalue");
                }
                if self.family == FamilyTag::Generic {
                    return fail("certified for a generic subspace");
                }
                if !self.support_check {
                    return fail("certified without witness support on the Kraus span");
                }
                if self.failures != 0 {
                    return fail("certified with finder failures");
                }
            }
            Verdict::Inapplicable => {
                if self.family != FamilyTag::Generic && self.support_check && self.failures == 0 {
                    return fail("inapplicable verdict for an applicable family");
                }
            }
            Verdict::CriterionNotSatisfied => {
                if self.family == FamilyTag::Generic || !self.support_check {
                    return fail("criterion evaluated on an inapplicable subspace");
                }
                if self.min_l_eigenvalue < -tol.equality && self.failures == 0 {
                    return fail("negative coefficient eigenvalue but not certified");
                }
            }
        }
        Ok(())
    }
}

pub fn certify(m: &KrausPairMap, trials: usize, seed: u64) -> Result<IndecomposabilityCertificate> {
    certify_with(m, trials, seed, &ToleranceConfig::default())
}

pub fn certify_with(
    m: &KrausPairMap,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<IndecomposabilityCertificate> {
    let l_spectrum = m.coefficient_spectrum()?;
    let min_l_eigenvalue = l_spectrum.last().copied().unwrap_or(0.0);
    let sub = build_subspace(m)?;

    let pre = m.vectorized_witness();
    let support_residual = sub.complement_leakage(&pre);
    let support_check = support_residual <= SUPPORT_TOL * pre.frobenius_norm().max(1.0);

    let mut cert = IndecomposabilityCertificate {
        map_id: sub.family_tag.to_string(),
        verdict: Verdict::Inapplicable,
        min_l_eigenvalue,
        l_spectrum,
        family: sub.family_tag,
        support_check,
        support_residual,
        trials: 0,
        failures: 0,
        min_finder_value: None,
        seed,
    };
    if sub.family_tag == FamilyTag::Generic || !support_check {
        return Ok(cert);
    }

    let n2 = sub.ambient_dim();
    let values: Vec<Option<f64>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i as u64);
            let rank = rng.gen_range(1..=n2);
            let q = random_psd(&mut rng, n2, rank);
            Ok(find_positive_expectation(&sub, &q, tol)?.map(|hit| hit.value))
        })
        .collect::<Result<_>>()?;

    cert.trials = trials;
    cert.failures = values.iter().filter(|v| v.is_none()).count();
    cert.min_finder_value = values
        .iter()
        .map(|v| v.unwrap_or(0.0))
        .reduce(f64::min);
    cert.verdict = if min_l_eigenvalue < -tol.equality && cert.failures == 0 {
        Verdict::CertifiedIndecomposable
    } else {
        Verdict::CriterionNotSatisfied
    };
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Operator;
    use crate::maps::{antisymmetric_unitary, choi_map, extended_reduction_map, piani_map, reduction_map};

    #[test]
    fn verdicts_for_the_four_families() {
        let tol = ToleranceConfig::default();
        let u = antisymmetric_unitary(4, &[0.0, 0.0], &Operator::identity(4)).unwrap();
        let ext = certify(&extended_reduction_map(4, &u).unwrap(), 50, 1).unwrap();
        assert_eq!(ext.verdict, Verdict::CertifiedIndecomposable);
        assert!((ext.min_l_eigenvalue + 1.0).abs() < 1e-12);

        let piani = piani_map(2, 2, &[1.0; 4], &[1.0, 1.0, 1.0, -1.0]).unwrap();
        assert_eq!(certify(&piani, 50, 1).unwrap().verdict, Verdict::CertifiedIndecomposable);

        let red = certify(&reduction_map(4).unwrap(), 50, 1).unwrap();
        assert_eq!(red.verdict, Verdict::CriterionNotSatisfied);

        let choi = certify(&choi_map().unwrap(), 50, 1).unwrap();
        assert_eq!(choi.verdict, Verdict::Inapplicable);
        assert_eq!(choi.trials, 0);

        for c in [ext, red, choi] {
            c.validate(&tol).unwrap();
        }
    }

    #[test]
    fn positive_piani_coefficients_do_not_certify() {
        let m = crate::maps::piani_map_unchecked(2, 2, &[1.0; 4], &[1.0; 4]).unwrap();
        let cert = certify(&m, 20, 3).unwrap();
        assert_eq!(cert.family, FamilyTag::PianiSum { d1: 2, d2: 2 });
        assert_eq!(cert.verdict, Verdict::CriterionNotSatisfied);
        assert!(cert.min_l_eigenvalue > 0.0);
    }

    #[test]
    fn tampered_certificate_fails_validation() {
        let u = antisymmetric_unitary(4, &[0.0, 0.0], &Operator::identity(4)).unwrap();
        let mut c = certify(&extended_reduction_map(4, &u).unwrap(), 10, 2).unwrap();
        c.failures = 1;
        assert!(c.validate(&ToleranceConfig::default()).is_err());
    }
}
