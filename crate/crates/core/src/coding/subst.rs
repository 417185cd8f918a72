use std::fmt;

use super::{CodingError, Letter};
use crate::words::Digit;

/// A morphism on `{0, …, n−1}^*`, given by the image of each letter.
/// Letters outside the intended domain carry an empty image.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Substitution {
    images: Vec<Vec<Letter>>,
}

impl Substitution {
    pub fn new(images: Vec<Vec<Letter>>) -> Self {
        Substitution { images }
    }

    /// Number of letters with a recorded image, including empty ones.
    pub fn domain_len(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, letter: Letter) -> &[Letter] {
        self.images.get(letter as usize).map_or(&[], Vec::as_slice)
    }

    pub fn images(&self) -> &[Vec<Letter>] {
        &self.images
    }

    pub fn apply(&self, w: &[Letter]) -> Vec<Letter> {
        w.iter().flat_map(|&a| self.image(a).iter().copied()).collect()
    }

    /// `self(w)` cut to `limit` letters, reading only as much of `w` as needed.
    pub fn apply_prefix(&self, w: &[Letter], limit: usize) -> Vec<Letter> {
        let mut out = Vec::with_capacity(limit);
        for &a in w {
            if out.len() >= limit {
                break;
            }
            out.extend_from_slice(self.image(a));
        }
        out.truncate(limit);
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        Substitution::new(other.images.iter().map(|w| self.apply(w)).collect())
    }

    pub fn pow(&self, n: u32) -> Substitution {
        let k = self.images.len() as Letter;
        let mut acc = Substitution::new((0..k).map(|a| vec![a]).collect());
        for _ in 0..n {
            acc = acc.compose(self);
        }
        acc
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, img) in self.images.iter().enumerate() {
            if a > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}→")?;
            if img.is_empty() {
                write!(f, "ε")?;
            }
            for x in img {
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// `η_c(j) = 0^{c_{j+1}}(j+1)` for `j < k−1` and `η_c(k−1) = 0^{c_k}`.
pub fn eta(c: &[Digit]) -> Result<Substitution, CodingError> {
    let k = c.len();
    if k < 2 {
        return Err(CodingError::ArityTooSmall { k });
    }
    if let Some(index) = c.iter().position(|&x| x == 0) {
        return Err(CodingError::ZeroParameter { index });
    }
    let images = (0..k)
        .map(|j| {
            let mut img = vec![0; c[j] as usize];
            if j + 1 < k {
                img.push(j as Letter + 1);
            }
            img
        })
        .collect();
    Ok(Substitution::new(images))
}

/// Arnoux-Rauzy morphism `L_i`: `i ↦ i`, `j ↦ ij`.
pub fn l_morphism(i: Letter, k: usize) -> Substitution {
    Substitution::new(
        (0..k as Letter)
            .map(|j| if j == i { vec![i] } else { vec![i, j] })
            .collect(),
    )
}

/// Cyclic renaming `R`: `j ↦ (j+1) mod k`.
pub fn r_morphism(k: usize) -> Substitution {
    Substitution::new((0..k as Letter).map(|j| vec![(j + 1) % k as Letter]).collect())
}

/// Dual NCF substitution `0 ↦ 0^d 1`, `1 ↦ 0^N`.
pub fn sigma_hat(d: Digit, n: Digit) -> Substitution {
    let mut zero = vec![0; d as usize];
    zero.push(1);
    Substitution::new(vec![zero, vec![0; n as usize]])
}

/// A directing sequence `ψ_0, ψ_1, …`, either repeating or finite.
#[derive(Clone, Copy, Debug)]
pub enum SubstitutionSeq<'a> {
    Periodic(&'a [Substitution]),
    Finite(&'a [Substitution]),
}

impl<'a> SubstitutionSeq<'a> {
    pub fn at(&self, n: usize) -> Option<&'a Substitution> {
        match *self {
            SubstitutionSeq::Periodic(s) => (!s.is_empty()).then(|| &s[n % s.len()]),
            SubstitutionSeq::Finite(s) => s.get(n),
        }
    }
}

/// Iteration cap for [`sadic_limit`] beyond the requested length.
const EXTRA_ITERATIONS: usize = 64;

/// First `length` letters of `lim ψ_0 ψ_1 ⋯ ψ_{n−1}(0)`.
///
/// Every `ψ_n(0)` must start with 0, which makes each iterate a prefix of
/// the next; the limit exists once the iterates outgrow `length`.
pub fn sadic_limit(subs: SubstitutionSeq<'_>, length: usize) -> Result<Vec<Letter>, CodingError> {
    let mut reached = 1;
    for n in 1..=length + EXTRA_ITERATIONS {
        let Some(last) = subs.at(n - 1) else {
            break;
        };
        if last.image(0).first() != Some(&0) {
            return Err(CodingError::NoLimit { length, reached: 0 });
        }
        // ψ_0 ⋯ ψ_{n−1}(0), keeping only what the final prefix needs
        let mut w = vec![0];
        for t in (0..n).rev() {
            w = subs.at(t).expect("checked above").apply_prefix(&w, length);
        }
        if w.len() >= length {
            return Ok(w);
        }
        reached = w.len();
    }
    Err(CodingError::NoLimit { length, reached })
}
