use super::MassAccumulator;
use crate::error::{Error, Result};

const MAX_SUBSET_DOCS: usize = 20;

fn check_phis(phis: &[f64]) -> Result<()> {
    if let Some(p) = phis.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::Domain(format!("success probability {p} outside [0, 1]")));
    }
    Ok(())
}

fn check_b(b: u64, phis: &[f64]) -> Result<()> {
    if b as usize > phis.len() {
        return Err(Error::Domain(format!("b = {b} exceeds d = {}", phis.len())));
    }
    Ok(())
}

/// Full PMF of the number of successes among independent Bernoulli trials,
/// by the standard `O(d^2)` recurrence.
pub fn poisson_binomial_distribution(phis: &[f64]) -> Result<Vec<f64>> {
    check_phis(phis)?;
    let mut pmf = vec![0.0; phis.len() + 1];
    pmf[0] = 1.0;
    for (j, &p) in phis.iter().enumerate() {
        for k in (0..=j + 1).rev() {
            let stay = pmf[k] * (1.0 - p);
            let step = if k > 0 { pmf[k - 1] * p } else { 0.0 };
            pmf[k] = stay + step;
        }
    }
    Ok(pmf)
}

/// `Pr(B = b)` by the recurrence.
pub fn poisson_binomial_pmf(b: u64, phis: &[f64]) -> Result<f64> {
    check_b(b, phis)?;
    let pmf = poisson_binomial_distribution(phis)?;
    Ok(pmf[b as usize])
}

/// `Pr(B = b)` by summing over all size-`b` subsets of documents. Only for
/// `d <= 20`; an independent cross-check of the recurrence.
pub fn poisson_binomial_pmf_subsets(b: u64, phis: &[f64]) -> Result<f64> {
    check_phis(phis)?;
    check_b(b, phis)?;
    let d = phis.len();
    if d > MAX_SUBSET_DOCS {
        return Err(Error::Infeasible {
            required: 1u128 << d,
            limit: 1u128 << MAX_SUBSET_DOCS,
        });
    }
    let mut acc = MassAccumulator::new();
    for mask in 0u32..(1u32 << d) {
        if u64::from(mask.count_ones()) != b {
            continue;
        }
        let p: f64 = phis
            .iter()
            .enumerate()
            .map(|(j, &p)| if mask >> j & 1 == 1 { p } else { 1.0 - p })
            .product();
        acc.add(p);
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_special_case() {
        let pmf = poisson_binomial_distribution(&[0.5; 4]).unwrap();
        let want = [1.0, 4.0, 6.0, 4.0, 1.0].map(|c| c / 16.0);
        for (a, b) in pmf.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn routes_agree() {
        let phis = [0.1, 0.75, 0.3, 0.999, 0.02, 0.5];
        for b in 0..=6 {
            let a = poisson_binomial_pmf(b, &phis).unwrap();
            let s = poisson_binomial_pmf_subsets(b, &phis).unwrap();
            assert!((a - s).abs() < 1e-15, "b={b}: {a} vs {s}");
        }
    }

    #[test]
    fn hand_values() {
        assert_eq!(poisson_binomial_pmf(1, &[0.5, 0.5]).unwrap(), 0.5);
        assert_eq!(poisson_binomial_pmf(3, &[1.0; 3]).unwrap(), 1.0);
        assert!((poisson_binomial_pmf(2, &[0.75, 0.75]).unwrap() - 0.5625).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid() {
        assert!(poisson_binomial_pmf(1, &[1.5]).is_err());
        assert!(poisson_binomial_pmf(3, &[0.5, 0.5]).is_err());
        assert!(poisson_binomial_pmf_subsets(3, &[0.5, 0.5]).is_err());
        assert!(poisson_binomial_pmf_subsets(1, &[0.5; 21]).is_err());
    }
}
