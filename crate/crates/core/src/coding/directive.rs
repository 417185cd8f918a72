use std::fmt;
use std::str::FromStr;

use super::subst::{eta, Substitution};
use super::CodingError;
use crate::numerics::{AlgNum, Interval};
use crate::perron::{build_finite_matrices, periodic_fixed_point};
use crate::synthesis::AlternateBase;
use crate::words::{quasi_greedy_words, Digit, UPWord};

/// A sequence of `k`-tuples `c = (c_1, …, c_k)` with `c_1 ≥ ⋯ ≥ c_k ≥ 1`,
/// tuple `n` parametrizing `ψ_n = η_c`. Either purely periodic or a finite
/// window `ψ_0, …, ψ_{W−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Directive {
    tuples: Vec<Vec<Digit>>,
    periodic: bool,
}

impl Directive {
    pub fn periodic(tuples: Vec<Vec<Digit>>) -> Result<Self, CodingError> {
        Directive::build(tuples, true)
    }

    pub fn window(tuples: Vec<Vec<Digit>>) -> Result<Self, CodingError> {
        Directive::build(tuples, false)
    }

    fn build(tuples: Vec<Vec<Digit>>, periodic: bool) -> Result<Self, CodingError> {
        let Some(k) = tuples.first().map(Vec::len) else {
            return Err(CodingError::EmptyDirective);
        };
        if k < 2 {
            return Err(CodingError::ArityTooSmall { k });
        }
        for (index, t) in tuples.iter().enumerate() {
            if t.len() != k {
                return Err(CodingError::ArityMismatch { index });
            }
            if t.windows(2).any(|w| w[0] < w[1]) || t[k - 1] < 1 {
                return Err(CodingError::NotMonotone { index });
            }
        }
        Ok(Directive { tuples, periodic })
    }

    pub fn k(&self) -> usize {
        self.tuples[0].len()
    }

    /// Period for periodic directives, window length otherwise.
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn tuples(&self) -> &[Vec<Digit>] {
        &self.tuples
    }

    /// Parameters of `ψ_n`; `None` past the end of a window.
    pub fn tuple(&self, n: usize) -> Option<&[Digit]> {
        if self.periodic {
            Some(&self.tuples[n % self.tuples.len()])
        } else {
            self.tuples.get(n).map(Vec::as_slice)
        }
    }

    /// `ψ_0, …, ψ_{len−1}` (one period for periodic directives).
    pub fn substitutions(&self) -> Vec<Substitution> {
        self.tuples
            .iter()
            .map(|t| eta(t).expect("validated tuple"))
            .collect()
    }
}

impl FromStr for Directive {
    type Err = CodingError;

    /// `c_1,…,c_k` tuples separated by `;`, read as a periodic directive.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || CodingError::Parse(s.to_string());
        let tuples = s
            .split(';')
            .map(|t| {
                t.split(',')
                    .map(|x| x.trim().parse::<Digit>().map_err(|_| err()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Directive::periodic(tuples)
    }
}

impl fmt::Display for Directive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .tuples
            .iter()
            .map(|t| t.iter().map(Digit::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// The regular Arnoux-Rauzy expansion `L_0^{a_1} L_1^{a_2} ⋯` rewritten as
/// `(L_0^{a_1} R)(L_0^{a_2} R)⋯ = η_{(a_1,…,a_1,1)} η_{(a_2,…,a_2,1)} ⋯`.
pub fn ar_to_eta(k: usize, exponents: &[Digit], periodic: bool) -> Result<Directive, CodingError> {
    if let Some(index) = exponents.iter().position(|&a| a == 0) {
        return Err(CodingError::ZeroParameter { index });
    }
    let tuples = exponents
        .iter()
        .map(|&a| {
            let mut c = vec![a; k];
            if let Some(last) = c.last_mut() {
                *last = 1;
            }
            c
        })
        .collect();
    Directive::build(tuples, periodic)
}

/// Dual N-continued fraction substitutions `σ̂_d = η_{(d, N)}`, `d ≥ N`.
pub fn ncf_to_eta(n: Digit, ds: &[Digit], periodic: bool) -> Result<Directive, CodingError> {
    if n == 0 {
        return Err(CodingError::ZeroParameter { index: 0 });
    }
    if let Some(index) = ds.iter().position(|&d| d < n) {
        return Err(CodingError::DLessThanN { index, d: ds[index], n });
    }
    Directive::build(ds.iter().map(|&d| vec![d, n]).collect(), periodic)
}

/// A Cantor base built from a directive.
#[derive(Clone, Debug)]
pub struct DirectiveBase {
    /// `β_0, β_1, …` (one period, or the window).
    pub exact: Vec<AlgNum>,
    pub betas: Vec<Interval>,
    /// The alternate base, for periodic directives.
    pub base: Option<AlternateBase>,
    /// `t_n = a_{n,1} a_{n−1,2} ⋯ a_{n−k+1,k} 0^ω` for the same indices.
    pub greedy: Vec<UPWord>,
    /// Value of `β_n` for `n < 0` on the window path.
    pub tail: Option<AlgNum>,
}

/// Digit `a_{n,j}` of the matrix rows: the `j`-th parameter of `ψ_{n−1}`,
/// or 1 when `n ≤ 0` on a window.
fn param(d: &Directive, n: i64, j: usize) -> Digit {
    if d.is_periodic() {
        let q = d.len() as i64;
        d.tuples[(n - 1).rem_euclid(q) as usize][j - 1]
    } else if n <= 0 {
        1
    } else {
        d.tuples[(n - 1) as usize][j - 1]
    }
}

fn greedy_word(d: &Directive, n: i64) -> UPWord {
    let k = d.k();
    let digits: Vec<Digit> = (1..=k).map(|j| param(d, n - j as i64 + 1, j)).collect();
    UPWord::finite(&digits)
}

/// The base `β_n = γ_{−n}` whose B-integers are coded by the directive.
///
/// Periodic directives use the periodic extension to negative indices and
/// give an alternate base with exact values. Windows use the all-ones tuple
/// for every `ψ_n` with `n < 0`; then `β_n` for `0 ≤ n < W` depends only on
/// `ψ_0, …, ψ_n` and is exact in the field of the k-bonacci number, which is
/// also the value of `β_n` for `n < 0`.
pub fn base_from_directive(d: &Directive, tol_bits: i64) -> Result<DirectiveBase, CodingError> {
    let k = d.k();
    if d.is_periodic() {
        let q = d.len();
        let ms = build_finite_matrices(d.tuples())?;
        let fp = periodic_fixed_point(&ms, tol_bits)?;
        let exact: Vec<AlgNum> = (0..q as i64)
            .map(|n| fp.exact.gammas[(-n).rem_euclid(q as i64) as usize].clone())
            .collect();
        let greedy: Vec<UPWord> = (0..q as i64).map(|n| greedy_word(d, n)).collect();
        let quasi = quasi_greedy_words(&greedy)?;
        let base = AlternateBase::from_exact(exact.clone(), tol_bits)?.with_quasi_greedy(quasi);
        return Ok(DirectiveBase {
            betas: base.betas().to_vec(),
            exact,
            base: Some(base),
            greedy,
            tail: None,
        });
    }
    // all-ones region: f_0 is the Perron eigenvector, γ_n = τ for n ≥ 1
    let ones = build_finite_matrices(&[vec![1; k]])?;
    let fp = periodic_fixed_point(&ones, tol_bits)?;
    let tau = fp.exact.gammas[0].clone();
    let mut f = fp.exact.fs[0].clone();
    let mut exact = Vec::with_capacity(d.len());
    for m in 0..d.len() {
        // A_{−m} has first row a_{m+1} = ψ_m; f_{−m−1} = f_{−m} A_{−m} / γ_{−m}
        let row = &d.tuples[m];
        let g: Vec<AlgNum> = (0..k)
            .map(|j| {
                let own = &f[0] * &AlgNum::from_int(i64::from(row[j]));
                if j + 1 < k {
                    &own + &f[j + 1]
                } else {
                    own
                }
            })
            .collect();
        let gamma = g[0].clone();
        let inv = gamma.recip().map_err(|e| CodingError::Undecidable(e.to_string()))?;
        f = g.iter().map(|x| x * &inv).collect();
        exact.push(gamma);
    }
    let betas = exact.iter().map(|b| b.enclose(tol_bits)).collect();
    let greedy = (0..d.len() as i64).map(|n| greedy_word(d, n)).collect();
    Ok(DirectiveBase {
        exact,
        betas,
        base: None,
        greedy,
        tail: Some(tau),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Dyadic;
    use crate::perron::quadratic_enclosure;

    #[test]
    fn monotone_check() {
        assert!(Directive::periodic(vec![vec![2, 1]]).is_ok());
        assert!(matches!(
            Directive::periodic(vec![vec![1, 1], vec![1, 2]]),
            Err(CodingError::NotMonotone { index: 1 })
        ));
        assert!(matches!(
            Directive::periodic(vec![vec![1, 0]]),
            Err(CodingError::NotMonotone { index: 0 })
        ));
        assert!(matches!(
            Directive::periodic(vec![vec![1, 1], vec![1, 1, 1]]),
            Err(CodingError::ArityMismatch { index: 1 })
        ));
        let d: Directive = "3,1;1,1".parse().unwrap();
        assert_eq!(d.tuples(), &[vec![3, 1], vec![1, 1]]);
        assert_eq!(d.to_string(), "3,1;1,1");
        assert!("1,x".parse::<Directive>().is_err());
    }

    #[test]
    fn ar_examples() {
        assert_eq!(ar_to_eta(3, &[1], true).unwrap().tuples(), &[vec![1, 1, 1]]);
        assert_eq!(ar_to_eta(2, &[1], true).unwrap().tuples(), &[vec![1, 1]]);
        assert_eq!(
            ar_to_eta(2, &[3, 1], true).unwrap().tuples(),
            &[vec![3, 1], vec![1, 1]]
        );
    }

    #[test]
    fn ncf_examples() {
        assert_eq!(ncf_to_eta(2, &[2], true).unwrap().tuples(), &[vec![2, 2]]);
        assert_eq!(
            ncf_to_eta(1, &[1, 2, 1], false).unwrap().tuples(),
            &[vec![1, 1], vec![2, 1], vec![1, 1]]
        );
        assert!(matches!(
            ncf_to_eta(3, &[2], true),
            Err(CodingError::DLessThanN { index: 0, d: 2, n: 3 })
        ));
    }

    #[test]
    fn periodic_bases() {
        let b = base_from_directive(&"1,1".parse().unwrap(), 64).unwrap();
        assert!(b.betas[0].overlaps(&quadratic_enclosure(1, 1, 5, 2, 80)));
        let b = base_from_directive(&"2,2".parse().unwrap(), 64).unwrap();
        assert!(b.betas[0].overlaps(&quadratic_enclosure(1, 1, 3, 1, 80)));
        assert_eq!(b.greedy, vec![UPWord::finite(&[2, 2])]);
        let base = b.base.unwrap();
        assert_eq!(base.quasi_greedy().unwrap(), &["(21)".parse::<UPWord>().unwrap()]);
        let b = base_from_directive(&"1,1,1".parse().unwrap(), 64).unwrap();
        assert!((b.betas[0].to_f64() - 1.839286755).abs() < 1e-9);
    }

    #[test]
    fn window_base_satisfies_value_one() {
        let d = Directive::window(vec![vec![2, 1], vec![1, 1], vec![3, 2], vec![2, 2]]).unwrap();
        let b = base_from_directive(&d, 64).unwrap();
        let tau = b.tail.clone().unwrap();
        let beta = |n: i64| if n < 0 { tau.clone() } else { b.exact[n as usize].clone() };
        for n in 0..d.len() as i64 {
            // 1 = Σ_j a_{n−j+1,j} / (β_{n−1} ⋯ β_{n−j})
            let mut sum = AlgNum::zero();
            let mut prod = AlgNum::one();
            for j in 1..=2 {
                prod = &prod * &beta(n - j as i64);
                let a = AlgNum::from_int(i64::from(param(&d, n - j as i64 + 1, j)));
                sum = &sum + &a.div(&prod).unwrap();
            }
            assert!(sum.eq_exact(&AlgNum::one()), "n = {n}");
        }
        for x in &b.betas {
            assert!(x.lo() > &Dyadic::one());
        }
        // a constant all-ones window reproduces the golden ratio everywhere
        let ones = base_from_directive(&Directive::window(vec![vec![1, 1]; 4]).unwrap(), 64).unwrap();
        for x in &ones.exact {
            assert!(x.eq_exact(ones.tail.as_ref().unwrap()));
        }
    }
}
