//! Orders of the finite symplectic and orthogonal groups in even characteristic.

use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassicalKind {
    /// Sp(2m, q).
    Sp,
    /// O⁺(2m, q).
    OrthPlus,
    /// O⁻(2m, q).
    OrthMinus,
}

impl fmt::Display for ClassicalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassicalKind::Sp => "Sp",
            ClassicalKind::OrthPlus => "O+",
            ClassicalKind::OrthMinus => "O-",
        })
    }
}

const OVERFLOW: Error = Error::Overflow("group order exceeds 128 bits");

fn pow(q: u128, e: u32) -> Result<u128> {
    q.checked_pow(e).ok_or(OVERFLOW)
}

fn mul(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b).ok_or(OVERFLOW)
}

/// `|Sp(2m, q)| = q^{m²} ∏_{i=1}^{m} (q^{2i} − 1)` and
/// `|O^ε(2m, q)| = 2 q^{m(m−1)} (q^m − ε) ∏_{i=1}^{m−1} (q^{2i} − 1)`.
pub fn classical_order(kind: ClassicalKind, m: u32, q: u64) -> Result<u128> {
    if m == 0 {
        return Err(Error::InvalidParameters("m must be at least 1"));
    }
    if q < 2 || !q.is_power_of_two() {
        return Err(Error::InvalidParameters("q must be a power of 2"));
    }
    let q = q as u128;
    let prod = |upto: u32| -> Result<u128> {
        let mut acc = 1u128;
        for i in 1..=upto {
            acc = mul(acc, pow(q, 2 * i)? - 1)?;
        }
        Ok(acc)
    };
    match kind {
        ClassicalKind::Sp => mul(pow(q, m * m)?, prod(m)?),
        ClassicalKind::OrthPlus | ClassicalKind::OrthMinus => {
            let qm = pow(q, m)?;
            let middle = if kind == ClassicalKind::OrthPlus { qm - 1 } else { qm + 1 };
            mul(mul(mul(2, pow(q, m * (m - 1))?)?, middle)?, prod(m - 1)?)
        }
    }
}

/// `n!`, the order of the symmetric group S_n.
pub fn factorial(n: u32) -> Result<u128> {
    (1..=n as u128).try_fold(1u128, mul)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_orders() {
        assert_eq!(classical_order(ClassicalKind::Sp, 2, 4).unwrap(), 979_200);
        assert_eq!(classical_order(ClassicalKind::OrthMinus, 2, 4).unwrap(), 8_160);
        assert_eq!(classical_order(ClassicalKind::OrthPlus, 2, 4).unwrap(), 7_200);
        assert_eq!(classical_order(ClassicalKind::OrthMinus, 1, 4).unwrap(), 10);
        assert_eq!(classical_order(ClassicalKind::Sp, 1, 4).unwrap(), 60);
        assert_eq!(classical_order(ClassicalKind::OrthMinus, 3, 4).unwrap(), 2_036_736_000);
        assert_eq!(classical_order(ClassicalKind::OrthPlus, 3, 4).unwrap(), 1_974_067_200);
        // Sp(2m, 2) ≅ O(2m + 1, 2); Sp(4, 2) ≅ S₆
        assert_eq!(classical_order(ClassicalKind::Sp, 2, 2).unwrap(), 720);
    }

    #[test]
    fn invalid_and_overflow() {
        assert!(matches!(classical_order(ClassicalKind::Sp, 0, 4), Err(Error::InvalidParameters(_))));
        assert!(matches!(classical_order(ClassicalKind::Sp, 2, 6), Err(Error::InvalidParameters(_))));
        assert!(matches!(classical_order(ClassicalKind::Sp, 8, 1 << 16), Err(Error::Overflow(_))));
        assert_eq!(factorial(5).unwrap(), 120);
    }
}
