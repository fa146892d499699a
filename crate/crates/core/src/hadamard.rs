//! Quaternary Hadamard matrices of order `2ℓ + 2` from Legendre pairs, their
//! realification to binary Hadamard matrices of order `4ℓ + 4`, and exact
//! verification of both.
//!
//! Layout for a canonical pair, with `1` and `−1` denoting all-ones blocks:
//!
//! ```text
//!  ┌ c00 c01 │ 1ᵀ        1ᵀ        ┐
//!  │ c10 c11 │ 1ᵀ       −1ᵀ        │
//!  │  1   1  │ C(A)      C(B)      │
//!  └  1  −1  │ C(B̄)ᵀ   −C(Ā)ᵀ     ┘
//! ```
//!
//! with corner `[[−1, −1], [−1, 1]]` for odd ℓ (`α = β = 1`) and
//! `[[−1, i], [−i, 1]]` for even ℓ (`α = 0`, `β = 1 + i`).

use crate::error::{Error, Result};
use crate::exactmath::GaussInt;
use crate::legendre::LegendrePair;
use crate::matrix::GaussMatrix;

pub fn quaternary_hadamard_from_pair(pair: &LegendrePair) -> Result<GaussMatrix> {
    if !pair.is_verified() {
        return Err(Error::InvalidArgument("pair is not a verified Legendre pair".into()));
    }
    if !pair.is_canonical() {
        return Err(Error::NotCanonical(format!(
            "row sums ({}, {}); normalize the pair first",
            pair.alpha(),
            pair.beta()
        )));
    }
    let l = pair.len();
    let n = 2 * l + 2;
    let one = GaussInt::ONE;
    let neg = -GaussInt::ONE;
    let corner = if l % 2 == 1 { [[neg, neg], [neg, one]] } else { [[neg, GaussInt::I], [-GaussInt::I, one]] };
    let mut h = GaussMatrix::zeros(n);
    for (r, row) in corner.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            h.set(r, c, v);
        }
    }
    for c in 2..n {
        h.set(0, c, one);
        h.set(1, c, if c < 2 + l { one } else { neg });
    }
    for r in 2..n {
        h.set(r, 0, one);
        h.set(r, 1, if r < 2 + l { one } else { neg });
    }
    let (a, b) = (pair.a(), pair.b());
    h.put_block(2, 2, &a.circulant());
    h.put_block(2, 2 + l, &b.circulant());
    h.put_block(2 + l, 2, &b.conj().circulant().transpose());
    h.put_block(2 + l, 2 + l, &a.conj().circulant().transpose().map(|z| -z));
    Ok(h)
}

/// Entries in `{±1, ±i}` and `H · conj(H)ᵀ = n·I`, exactly.
pub fn is_quaternary_hadamard(h: &GaussMatrix) -> bool {
    h.is_quaternary() && h.gram().is_scalar(GaussInt::from(h.order() as i64))
}

/// Entries `±1`, `H · Hᵀ = n·I`, and order `1`, `2` or a multiple of 4.
pub fn is_binary_hadamard(h: &GaussMatrix) -> bool {
    let n = h.order();
    (n == 1 || n == 2 || n.is_multiple_of(4)) && h.is_binary() && h.gram().is_scalar(GaussInt::from(n as i64))
}

/// With `H = X + iY`, returns `[[X+Y, X−Y], [−(X−Y), X+Y]]`, which is
/// checked to be a binary Hadamard matrix before it is returned.
pub fn binary_from_quaternary(h: &GaussMatrix) -> Result<GaussMatrix> {
    if !is_quaternary_hadamard(h) {
        return Err(Error::InvalidArgument("input is not a quaternary Hadamard matrix".into()));
    }
    let n = h.order();
    let mut out = GaussMatrix::zeros(2 * n);
    for r in 0..n {
        for c in 0..n {
            let z = h.get(r, c);
            let sum = GaussInt::from(z.re + z.im);
            let diff = GaussInt::from(z.re - z.im);
            out.set(r, c, sum);
            out.set(r, c + n, diff);
            out.set(r + n, c, -diff);
            out.set(r + n, c + n, sum);
        }
    }
    if !is_binary_hadamard(&out) {
        return Err(Error::VerificationFailed(format!("realification of order {n} is not Hadamard")));
    }
    Ok(out)
}

/// Both certificates for one pair.
pub struct HadamardCertificates {
    pub quaternary: GaussMatrix,
    pub binary: GaussMatrix,
}

/// Normalize, build, realify and verify.
pub fn certificates_for_pair(pair: &LegendrePair) -> Result<HadamardCertificates> {
    let pair = if pair.is_canonical() { pair.clone() } else { pair.normalized()? };
    let quaternary = quaternary_hadamard_from_pair(&pair)?;
    if !is_quaternary_hadamard(&quaternary) {
        return Err(Error::VerificationFailed(format!(
            "order-{} matrix built from a verified pair is not Hadamard",
            quaternary.order()
        )));
    }
    let binary = binary_from_quaternary(&quaternary)?;
    Ok(HadamardCertificates { quaternary, binary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::QSymbol;
    use crate::seqcore::QSeq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(s: &str) -> QSeq {
        s.parse().unwrap()
    }

    fn m(rows: &[&[(i64, i64)]]) -> GaussMatrix {
        GaussMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&(a, b)| GaussInt::new(a, b)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn small_checks() {
        assert!(is_quaternary_hadamard(&m(&[&[(1, 0), (1, 0)], &[(1, 0), (-1, 0)]])));
        assert!(is_quaternary_hadamard(&m(&[&[(1, 0), (0, 1)], &[(0, 1), (1, 0)]])));
        assert!(!is_quaternary_hadamard(&m(&[&[(1, 0), (1, 0)], &[(1, 0), (1, 0)]])));
        assert!(is_binary_hadamard(&m(&[&[(1, 0)]])));
        assert!(is_binary_hadamard(&m(&[&[(1, 0), (1, 0)], &[(1, 0), (-1, 0)]])));
        let three = GaussMatrix::from_rows(vec![vec![GaussInt::ONE; 3]; 3]).unwrap();
        assert!(!is_binary_hadamard(&three));
        assert!(!is_binary_hadamard(&m(&[&[(1, 0), (0, 1)], &[(0, 1), (1, 0)]])));
    }

    #[test]
    fn from_pairs() {
        let p2 = LegendrePair::new(q("[1,-1]"), q("[1,i]")).unwrap();
        let h = quaternary_hadamard_from_pair(&p2).unwrap();
        assert_eq!(h.order(), 6);
        assert!(is_quaternary_hadamard(&h));
        assert_eq!(h.get(0, 1), GaussInt::I);
        assert_eq!(h.get(1, 0), -GaussInt::I);
        assert_eq!(h.get(1, 5), -GaussInt::ONE);
        let b = binary_from_quaternary(&h).unwrap();
        assert_eq!(b.order(), 12);

        let p6 = LegendrePair::new(q("[1,1,-1,-1,1,-1]"), q("[1,1,-1,i,-1,1]")).unwrap();
        let h = quaternary_hadamard_from_pair(&p6).unwrap();
        assert_eq!(h.order(), 14);
        assert!(is_quaternary_hadamard(&h));

        let a3 = q("[1,1,-1]");
        let p3 = LegendrePair::new(a3.clone(), a3).unwrap();
        let h = quaternary_hadamard_from_pair(&p3).unwrap();
        assert_eq!(h.order(), 8);
        assert!(is_quaternary_hadamard(&h));
        assert_eq!(h.get(0, 1), -GaussInt::ONE);
        assert!(is_binary_hadamard(&binary_from_quaternary(&h).unwrap()));
    }

    #[test]
    fn rejects_bad_input() {
        let p2 = LegendrePair::new(q("[1,i]"), q("[1,-1]")).unwrap();
        assert!(matches!(quaternary_hadamard_from_pair(&p2), Err(Error::NotCanonical(_))));
        assert!(certificates_for_pair(&p2).is_ok());
        let bad = LegendrePair::unverified(q("[1,1]"), q("[1,i]")).unwrap();
        assert!(quaternary_hadamard_from_pair(&bad).is_err());
        let not_h = GaussMatrix::from_rows(vec![vec![GaussInt::ONE; 2]; 2]).unwrap();
        assert!(binary_from_quaternary(&not_h).is_err());
        assert_eq!(binary_from_quaternary(&m(&[&[(1, 0), (1, 0)], &[(1, 0), (-1, 0)]])).unwrap().order(), 4);
    }

    /// Random complex Hadamard matrices: products of the order-2 matrices
    /// `[[1,1],[1,−1]]` and `[[1,i],[i,1]]` under Kronecker products, with
    /// random row/column unit scalings and permutations.
    fn random_complex_hadamard(rng: &mut ChaCha8Rng, log2: u32) -> GaussMatrix {
        let base = [
            [[GaussInt::ONE, GaussInt::ONE], [GaussInt::ONE, -GaussInt::ONE]],
            [[GaussInt::ONE, GaussInt::I], [GaussInt::I, GaussInt::ONE]],
        ];
        let mut cur = GaussMatrix::identity(1);
        for _ in 0..log2 {
            let k = base[rng.gen_range(0..2)];
            let n = cur.order();
            let mut next = GaussMatrix::zeros(2 * n);
            for r in 0..n {
                for c in 0..n {
                    for (i, row) in k.iter().enumerate() {
                        for (j, &v) in row.iter().enumerate() {
                            next.set(i * n + r, j * n + c, v * cur.get(r, c));
                        }
                    }
                }
            }
            cur = next;
        }
        let n = cur.order();
        let mut out = GaussMatrix::zeros(n);
        let mut perm: Vec<usize> = (0..n).collect();
        for k in (1..n).rev() {
            perm.swap(k, rng.gen_range(0..=k));
        }
        let row_units: Vec<_> = (0..n).map(|_| QSymbol::from_power(rng.gen_range(0..4)).value()).collect();
        let col_units: Vec<_> = (0..n).map(|_| QSymbol::from_power(rng.gen_range(0..4)).value()).collect();
        for (r, &ru) in row_units.iter().enumerate() {
            for (c, &cu) in col_units.iter().enumerate() {
                out.set(r, c, ru * cur.get(perm[r], c) * cu);
            }
        }
        out
    }

    #[test]
    fn realification_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..100 {
            let h = random_complex_hadamard(&mut rng, 1 + k % 3);
            assert!(is_quaternary_hadamard(&h));
            let b = binary_from_quaternary(&h).unwrap();
            assert_eq!(b.order(), 2 * h.order());
        }
    }

    #[test]
    fn circulant_blocks_commute_for_pairs() {
        let p = crate::corpus::even_entry(12).unwrap().pair().unwrap();
        let (ca, cb) = (p.a().circulant(), p.b().circulant());
        assert_eq!(&ca * &cb, &cb * &ca);
    }
}
