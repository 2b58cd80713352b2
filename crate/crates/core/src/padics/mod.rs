//! Truncated arithmetic in `Z_p ⊂ Z_q ⊂ Z_q[pi]`, Morita's `Gamma_p` and
//! Teichmüller lifts.

mod eisenstein;
mod gamma;
mod qq;
mod zq;

pub use eisenstein::{EisCtx, EisElem};
pub use gamma::{gamma_p, GammaTable, PadicInt, DEFAULT_TABLE_BUDGET};
pub use qq::PadicRationalZq;
pub use zq::{ZqCtx, ZqElem};

/// Smallest `M` with `p^M > 4 (q + 1 + 2 sqrt(q))^2`.
///
/// Enough to identify any point count or trace appearing in the identities
/// from its residue.
pub fn default_precision(p: u64, r: u32) -> u32 {
    let q = p.pow(r) as u128;
    let mut m = 1u32;
    loop {
        let pm = (p as u128).pow(m);
        // pm > 4(q+1)^2 + 16q + 16(q+1)sqrt(q)  <=>  L > 0 and L^2 > 256 (q+1)^2 q
        let base = 4 * (q + 1) * (q + 1) + 16 * q;
        if pm > base {
            let l = pm - base;
            if l * l > 256 * (q + 1) * (q + 1) * q {
                return m;
            }
        }
        m += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_precisions() {
        for (p, r, m) in [
            (5, 1, 4),
            (3, 1, 5),
            (3, 2, 7),
            (13, 2, 5),
            (17, 1, 3),
            (29, 1, 3),
            (7, 2, 5),
            (5, 2, 6),
        ] {
            assert_eq!(default_precision(p, r), m, "p={p} r={r}");
        }
    }

    #[test]
    fn default_precision_is_minimal() {
        for (p, r) in [(3, 1), (5, 1), (7, 1), (11, 2), (13, 1), (23, 1)] {
            let m = default_precision(p, r);
            let q = p.pow(r) as f64;
            let bound = 4.0 * (q + 1.0 + 2.0 * q.sqrt()).powi(2);
            assert!((p as f64).powi(m as i32) > bound);
            assert!((p as f64).powi(m as i32 - 1) <= bound);
        }
    }
}
