//! Membership in `S(n)`: rings with covering number `n` all of whose proper
//! quotients have covering number greater than `n`.

use crate::cover::{sigma, CoverResult, Limits, Sigma};
use crate::elemset::ElementSet;
use crate::error::{Result, RingError};
use crate::ideal::{local_data, minimal_ideals, quotient_ring, QuotientResult};
use crate::ring::{Elem, RingTable};

/// What is known about `sigma(R/I)` after a search capped at `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientSigma {
    Exact(Sigma),
    GreaterThan(usize),
}

impl QuotientSigma {
    pub fn exceeds(self, n: usize) -> bool {
        match self {
            QuotientSigma::Exact(s) => s > Sigma::Finite(n),
            QuotientSigma::GreaterThan(m) => m >= n,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdealCheck {
    pub ideal: ElementSet,
    pub quotient_sigma: QuotientSigma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureReason {
    WrongSigma,
    QuotientAlsoSmall(ElementSet),
}

#[derive(Clone, Debug)]
pub struct SnVerdict {
    pub member: bool,
    pub n: usize,
    pub sigma: CoverResult,
    pub minimal_ideal_checks: Vec<IdealCheck>,
    pub failure_reason: Option<FailureReason>,
}

/// `sigma` with cap `n`, reporting "more than n" instead of an error.
fn sigma_capped(ring: &RingTable, n: usize, limits: &Limits) -> Result<QuotientSigma> {
    match sigma(ring, &limits.with_sigma_cap(n)) {
        Ok(res) => Ok(QuotientSigma::Exact(res.sigma)),
        Err(RingError::CapExceeded(msg)) if msg.starts_with("covering number") => {
            Ok(QuotientSigma::GreaterThan(n))
        }
        Err(e) => Err(e),
    }
}

/// Decides `R in S(n)`. Only minimal nonzero proper ideals are checked: any
/// proper quotient `R/I` is a quotient of some `R/I_0` with `I_0` minimal,
/// and `sigma(R/I_0) <= sigma(R/I)`.
pub fn in_sn(ring: &RingTable, n: usize, limits: &Limits) -> Result<SnVerdict> {
    if n < 3 {
        return Err(RingError::Invalid(format!("S(n) is defined for n >= 3, got {n}")));
    }
    let own = sigma(ring, &limits.with_sigma_cap(limits.sigma_cap.max(n)))?;
    if own.sigma != Sigma::Finite(n) {
        return Ok(SnVerdict {
            member: false,
            n,
            sigma: own,
            minimal_ideal_checks: Vec::new(),
            failure_reason: Some(FailureReason::WrongSigma),
        });
    }
    let mut checks = Vec::new();
    let mut failure = None;
    for ideal in minimal_ideals(ring) {
        let q = quotient_ring(ring, &ideal)?;
        let qs = sigma_capped(&q.quotient, n, limits)?;
        if !qs.exceeds(n) && failure.is_none() {
            failure = Some(FailureReason::QuotientAlsoSmall(ideal.clone()));
        }
        checks.push(IdealCheck {
            ideal,
            quotient_sigma: qs,
        });
    }
    Ok(SnVerdict {
        member: failure.is_none(),
        n,
        sigma: own,
        minimal_ideal_checks: checks,
        failure_reason: failure,
    })
}

#[derive(Clone, Debug)]
pub struct SigmaWitness {
    pub sigma: usize,
    /// Increasing chain of ideals of the original ring.
    pub chain: Vec<ElementSet>,
    /// The final quotient, a member of `S(sigma)`.
    pub quotient: RingTable,
    /// Projection from the original ring onto `quotient`.
    pub projection: Vec<Elem>,
}

/// Descends through quotients by minimal ideals that keep the covering
/// number, always taking the canonically least such ideal.
pub fn classify_sigma_witness(ring: &RingTable, limits: &Limits) -> Result<SigmaWitness> {
    let target = match sigma(ring, limits)?.sigma {
        Sigma::Finite(s) => s,
        Sigma::NotCoverable => {
            return Err(RingError::NotApplicable("ring is not coverable".into()))
        }
    };
    let mut current = ring.clone();
    let mut projection: Vec<Elem> = ring.elements().collect();
    let mut chain = Vec::new();
    'descend: loop {
        for ideal in minimal_ideals(&current) {
            let QuotientResult {
                quotient,
                projection: step,
                ..
            } = quotient_ring(&current, &ideal)?;
            if sigma_capped(&quotient, target, limits)? == QuotientSigma::Exact(Sigma::Finite(target)) {
                let pulled = ElementSet::from_indices(
                    ring.order(),
                    (0..ring.order()).filter(|&x| ideal.contains(projection[x])),
                );
                chain.push(pulled);
                projection = projection.iter().map(|&x| step[x.index()]).collect();
                current = quotient;
                continue 'descend;
            }
        }
        break;
    }
    Ok(SigmaWitness {
        sigma: target,
        chain,
        quotient: current,
        projection,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalPrediction {
    pub coverable: bool,
    pub sigma: Sigma,
}

/// Predicted covering number of a commutative local ring with residue field
/// `F_p`: not coverable when `dim J/J^2 <= 1`, or when it is 2 and
/// `p * 1` is not in `J^2`; otherwise `p + 1`.
pub fn local_coverability_criterion(ring: &RingTable) -> Result<LocalPrediction> {
    if !ring.is_commutative() {
        return Err(RingError::NotApplicable("ring is not commutative".into()));
    }
    let data = local_data(ring);
    if !data.is_local {
        return Err(RingError::NotApplicable("ring is not local".into()));
    }
    if !data.resfield_prime {
        return Err(RingError::NotApplicable(format!(
            "residue field has non-prime order {}",
            data.residue_order
        )));
    }
    let p = data.residue_order as usize;
    let dim = data.dim_j_mod_j2.expect("defined for prime residue fields");
    let p_in_j2 = data.p_in_j2.expect("defined for prime residue fields");
    let coverable = !(dim <= 1 || (dim == 2 && !p_in_j2));
    Ok(LocalPrediction {
        coverable,
        sigma: if coverable {
            Sigma::Finite(p + 1)
        } else {
            Sigma::NotCoverable
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    #[test]
    fn s3_members() {
        let lim = Limits::default();
        let f2 = gf(2).unwrap();
        let v = in_sn(&product(&[f2.clone(), f2]).unwrap(), 3, &lim).unwrap();
        assert!(v.member);
        assert!(in_sn(&nil2(2).unwrap(), 3, &lim).unwrap().member);
        let v = in_sn(&upper_tri(2, &gf(2).unwrap()).unwrap(), 3, &lim).unwrap();
        assert!(!v.member);
        assert!(matches!(v.failure_reason, Some(FailureReason::QuotientAlsoSmall(_))));
    }

    #[test]
    fn wrong_sigma() {
        let v = in_sn(&zmod(4).unwrap(), 3, &Limits::default()).unwrap();
        assert!(!v.member);
        assert_eq!(v.failure_reason, Some(FailureReason::WrongSigma));
        assert!(in_sn(&zmod(4).unwrap(), 2, &Limits::default()).is_err());
    }

    #[test]
    fn witness_for_z2_times_z4() {
        let r = product(&[gf(2).unwrap(), zmod(4).unwrap()]).unwrap();
        let w = classify_sigma_witness(&r, &Limits::default()).unwrap();
        assert_eq!(w.sigma, 3);
        assert_eq!(w.quotient.order(), 4);
        assert_eq!(w.chain.len(), 1);
        assert!(classify_sigma_witness(&gf(4).unwrap(), &Limits::default()).is_err());
    }

    #[test]
    fn local_criterion() {
        let p = local_coverability_criterion(&nil2(3).unwrap()).unwrap();
        assert_eq!(p.sigma, Sigma::Finite(4));
        let p = local_coverability_criterion(&trunc_poly(2, 3).unwrap()).unwrap();
        assert!(!p.coverable);
        let p = local_coverability_criterion(&zmod(9).unwrap()).unwrap();
        assert!(!p.coverable);
        assert!(local_coverability_criterion(&gf(4).unwrap()).is_err());
        assert!(local_coverability_criterion(&twisted_dual(4).unwrap()).is_err());
        let f2 = gf(2).unwrap();
        assert!(local_coverability_criterion(&product(&[f2.clone(), f2]).unwrap()).is_err());
    }
}
