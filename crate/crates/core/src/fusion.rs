//! Closed-form Clebsch-Gordan rules for tensor products of string modules,
//! with the vertex-counting helpers they are built from.

use crate::error::{Error, Result};
use crate::majid::Params;
use crate::quiverrep::{Decomposition, IndecompClass};

/// Number of pairs `(x, y)` with `0 <= x <= alpha`, `0 <= y <= beta` and
/// `(x + y) mod n == k`, by the piecewise closed form.
pub fn count_n(alpha: usize, beta: usize, k: usize, n: usize) -> Result<usize> {
    if n == 0 || alpha >= n || beta >= n || k >= n {
        return Err(Error::Shape(format!(
            "count_n needs alpha, beta, k < n; got alpha={alpha} beta={beta} k={k} n={n}"
        )));
    }
    let (lo, hi) = if alpha <= beta { (alpha, beta) } else { (beta, alpha) };
    let value = if lo + hi < n {
        if k <= lo {
            k + 1
        } else if k <= hi {
            lo + 1
        } else if k <= lo + hi {
            lo + hi + 1 - k
        } else {
            0
        }
    } else {
        let wrap = lo + hi + 1 - n;
        if k <= wrap {
            wrap + 1
        } else if k <= lo {
            k + 1
        } else if k <= hi {
            lo + 1
        } else {
            lo + hi + 1 - k
        }
    };
    Ok(value)
}

/// Quotient/remainder bookkeeping for one parameter set.
#[derive(Clone, Debug)]
pub struct FusionContext {
    params: Params,
}

impl FusionContext {
    pub fn new(params: &Params) -> Self {
        FusionContext {
            params: params.clone(),
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// `i mod n`.
    pub fn normalize(&self, i: usize) -> usize {
        i % self.params.n()
    }

    /// `(e / n, e mod n)`.
    pub fn split(&self, e: usize) -> (usize, usize) {
        let n = self.params.n();
        (e / n, e % n)
    }

    /// How many summands saturate at length `d - 1`, if any.
    pub fn overflow(&self, e: usize, f: usize) -> Option<usize> {
        let d = self.params.d();
        (e + f >= d).then(|| e + f + 1 - d)
    }

    /// Dimension at vertex `i` of V(0,e) ⊗ V(0,f).
    pub fn vertex_dim(&self, e: usize, f: usize, i: usize) -> usize {
        let n = self.params.n();
        let (_, er) = self.split(e);
        let (_, fr) = self.split(f);
        let bulk = (e * f - er * fr) / n + (e + f - er - fr) / n;
        bulk + count_n(er, fr, self.normalize(i), n).expect("residues are below n")
    }

    /// Dimension of `ker T_i` at vertex `i` of V(0,e) ⊗ V(0,f).
    pub fn kernel_dim(&self, e: usize, f: usize, i: usize) -> usize {
        let (lo, hi) = if e <= f { (e, f) } else { (f, e) };
        let i = self.normalize(i);
        (hi - lo..=hi)
            .filter(|&j| self.normalize(lo + j) == i)
            .count()
    }

    /// Number of summands of V(0,e) ⊗ V(0,f) starting at each vertex.
    pub fn summand_counts(&self, e: usize, f: usize) -> Vec<usize> {
        let short = e.min(f);
        let (q, r) = self.split(short);
        (0..self.params.n())
            .map(|i| if i <= r { q + 1 } else { q })
            .collect()
    }

    /// V(i,e) ⊗ V(j,f) as a multiset of string modules.
    pub fn decompose(&self, a: IndecompClass, b: IndecompClass) -> Decomposition {
        let d = self.params.d();
        let base = a.i + b.i;
        let (e, f) = if a.e <= b.e { (a.e, b.e) } else { (b.e, a.e) };
        let class = |shift: usize, len: usize| IndecompClass {
            i: self.normalize(base + shift),
            e: len,
        };
        let mut out = Decomposition::new();
        let first_free = match self.overflow(e, f) {
            None => 0,
            Some(wrap) => {
                for k in 0..=wrap {
                    out.add(class(k, d - 1), 1);
                }
                wrap + 1
            }
        };
        for k in first_free..=e {
            out.add(class(k, e + f - 2 * k), 1);
        }
        out
    }
}

/// See [`FusionContext::vertex_dim`].
pub fn vertex_dim(e: usize, f: usize, i: usize, params: &Params) -> usize {
    FusionContext::new(params).vertex_dim(e, f, i)
}

/// See [`FusionContext::kernel_dim`].
pub fn kernel_dim(e: usize, f: usize, i: usize, params: &Params) -> usize {
    FusionContext::new(params).kernel_dim(e, f, i)
}

/// See [`FusionContext::summand_counts`].
pub fn summand_counts(e: usize, f: usize, params: &Params) -> Vec<usize> {
    FusionContext::new(params).summand_counts(e, f)
}

/// See [`FusionContext::decompose`].
pub fn cg_decompose(a: IndecompClass, b: IndecompClass, params: &Params) -> Decomposition {
    FusionContext::new(params).decompose(a, b)
}

/// Summands starting at each vertex, from vertex dimensions and kernel
/// dimensions: `dim U_i - dim U_{i-1} + dim ker T_{i-1}`.
pub fn summands_from_kernels(dims: &[usize], kernels: &[usize]) -> Vec<i64> {
    let n = dims.len();
    (0..n)
        .map(|i| {
            let prev = (i + n - 1) % n;
            dims[i] as i64 - dims[prev] as i64 + kernels[prev] as i64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majid::validate_params;
    use crate::quiverrep::{decompose_oracle, kernel_dims, tensor_rep};

    fn class(i: usize, e: usize) -> IndecompClass {
        IndecompClass { i, e }
    }

    fn brute(alpha: usize, beta: usize, k: usize, n: usize) -> usize {
        (0..=alpha)
            .flat_map(|x| (0..=beta).map(move |y| (x + y) % n))
            .filter(|&r| r == k)
            .count()
    }

    #[test]
    fn count_n_examples() {
        assert_eq!(count_n(1, 2, 3, 5).unwrap(), 1);
        assert_eq!(count_n(1, 1, 0, 2).unwrap(), 2);
        for n in 1..6 {
            for k in 0..n {
                assert_eq!(count_n(0, 0, k, n).unwrap(), usize::from(k == 0));
            }
        }
        assert!(count_n(3, 0, 0, 3).is_err());
        assert!(count_n(0, 0, 2, 2).is_err());
    }

    #[test]
    fn count_n_matches_enumeration() {
        for n in 1..=8 {
            for a in 0..n {
                for b in 0..n {
                    for k in 0..n {
                        assert_eq!(count_n(a, b, k, n).unwrap(), brute(a, b, k, n), "{a} {b} {k} {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn vertex_dims() {
        let p = validate_params(2, 1, 1).unwrap();
        assert_eq!(vertex_dim(1, 1, 0, &p), 2);
        for e in 0..p.d() {
            for f in 0..p.d() {
                let total: usize = (0..2).map(|i| vertex_dim(e, f, i, &p)).sum();
                assert_eq!(total, (e + 1) * (f + 1));
            }
            for i in 0..2 {
                let direct = (0..=e).filter(|m| m % 2 == i).count();
                assert_eq!(vertex_dim(0, e, i, &p), direct);
            }
        }
    }

    #[test]
    fn summand_count_examples() {
        let p = validate_params(2, 1, 1).unwrap();
        assert_eq!(summand_counts(1, 1, &p), vec![1, 1]);
        assert_eq!(summand_counts(0, 3, &p), vec![1, 0]);
        let p = validate_params(3, 1, 1).unwrap();
        for e in 0..p.d() {
            for f in 0..p.d() {
                let counts = summand_counts(e, f, &p);
                assert!(counts.windows(2).all(|w| w[0] >= w[1] && w[0] - w[1] <= 1));
                assert_eq!(counts.iter().sum::<usize>(), e.min(f) + 1);
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let p = validate_params(3, 1, 1).unwrap();
        let d = p.d();
        for f in 1..d - 1 {
            let got = cg_decompose(class(0, 1), class(0, f), &p);
            let want: Decomposition = [(class(0, f + 1), 1), (class(1, f - 1), 1)].into_iter().collect();
            assert_eq!(got, want);
        }
        for e in 0..d {
            let got = cg_decompose(class(0, e), class(0, d - 1), &p);
            let want: Decomposition = (0..=e).map(|k| (class(k % 3, d - 1), 1)).collect();
            assert_eq!(got, want);
        }
        let got = cg_decompose(class(2, 0), class(2, 0), &p);
        assert_eq!(got, [(class(1, 0), 1)].into_iter().collect());

        let p = validate_params(2, 0, 2).unwrap();
        let got = cg_decompose(class(0, 1), class(1, 1), &p);
        assert_eq!(got, [(class(1, 1), 1), (class(0, 1), 1)].into_iter().collect());
    }

    #[test]
    fn trivial_category_is_group_multiplication() {
        let p = validate_params(3, 0, 0).unwrap();
        assert_eq!(p.d(), 1);
        for i in 0..3 {
            for j in 0..3 {
                let got = cg_decompose(class(i, 0), class(j, 0), &p);
                assert_eq!(got, [(class((i + j) % 3, 0), 1)].into_iter().collect());
            }
        }
    }

    #[test]
    fn agrees_with_oracle_for_small_params() {
        for p in crate::majid::Params::all_up_to(3) {
            let ctx = FusionContext::new(&p);
            for a in IndecompClass::all(&p) {
                for b in IndecompClass::all(&p) {
                    let rep = tensor_rep(a, b, &p).unwrap();
                    let oracle = decompose_oracle(&rep, p.d()).unwrap();
                    assert_eq!(ctx.decompose(a, b), oracle, "{p} {a} {b}");
                }
            }
            for e in 0..p.d() {
                for f in 0..p.d() {
                    let rep = tensor_rep(class(0, e), class(0, f), &p).unwrap();
                    let kernels = kernel_dims(&rep).unwrap();
                    for i in 0..p.n() {
                        assert_eq!(rep.dims()[i], ctx.vertex_dim(e, f, i));
                        assert_eq!(kernels[i], ctx.kernel_dim(e, f, i), "{p} {e} {f} {i}");
                    }
                    let from_kernels = summands_from_kernels(rep.dims(), &kernels);
                    let expected: Vec<i64> = ctx.summand_counts(e, f).iter().map(|&c| c as i64).collect();
                    assert_eq!(from_kernels, expected);
                }
            }
        }
    }
}
