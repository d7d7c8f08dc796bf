//! Free differential calculus on words in a free group, and the matrix
//! action it induces on the augmentation ideal.
//!
//! The derivative ∂w/∂x_k of a free word w is the group-algebra element
//! determined by the product rule
//!
//! ```text
//! ∂(uv)/∂x_k = ∂u/∂x_k + u · ∂v/∂x_k,
//! ∂x_m/∂x_k  = δ_{mk},      ∂x_m^{-1}/∂x_k = −δ_{mk} · x_m^{-1}.
//! ```
//!
//! It satisfies the fundamental identity w − 1 = Σ_k ∂w/∂x_k · (x_k − 1),
//! which [`fundamental_check`] verifies for any word, and which shows that
//! the differences x_k − 1 span the augmentation ideal as a free module.
//!
//! For an element g of the semidirect ambient (free part times
//! basis-conjugating part), conjugation x_l ↦ g^{-1} x_l g lands back in
//! the free group, and differentiating the rewritten words row by row
//! yields a square matrix over the group algebra. [`fox_action_matrix`]
//! computes it; the assignment is multiplicative, so it is a matrix
//! representation of the whole semidirect product. This construction is
//! the independent check for the closed-form matrices in the module on
//! symbolic representations of basis-conjugating generators.

use crate::galgebra::{AlgMatrix, AlgebraElement, Ambient, Basis, CanonElement, Matrix};
use crate::laurent::LaurentPoly;
use crate::words::{GenKind, Sign, Word};
use crate::{Error, Result};

/// Checks that a word uses only free letters x_k and that the
/// differentiation index is within range.
fn check_free_word(w: &Word, k: u32) -> Result<()> {
    if k < 1 || k > w.rank() {
        return Err(Error::IndexOutOfRange(format!(
            "differentiation index {k} outside 1..={}",
            w.rank()
        )));
    }
    for letter in w.letters() {
        if !matches!(letter.kind, GenKind::FreeX(_)) {
            return Err(Error::UnsupportedLetter {
                letter: letter.to_string(),
                operation: "free differentiation".into(),
            });
        }
    }
    Ok(())
}

/// The derivative ∂w/∂x_k as an element of the group algebra of the free
/// group (semidirect ambient with trivial automorphism parts).
pub fn fox_derivative(w: &Word, k: u32) -> Result<AlgebraElement> {
    check_free_word(w, k)?;
    let ambient = Ambient::Semidirect { rank: w.rank() };
    let reduced = w.reduced();
    let mut acc = AlgebraElement::zero(ambient);
    let mut prefix = AlgebraElement::one(ambient);
    for &letter in reduced.letters() {
        let m = match letter.kind {
            GenKind::FreeX(m) => m,
            _ => unreachable!("validated above"),
        };
        if m == k {
            let contribution = match letter.sign {
                Sign::Plus => AlgebraElement::one(ambient),
                Sign::Minus => {
                    let inv = Word::free_x(w.rank(), m, Sign::Minus)?;
                    AlgebraElement::group(ambient, &inv)?.neg()
                }
            };
            acc = acc.add(&prefix.mul(&contribution)?)?;
        }
        let step = Word::new(w.rank(), vec![letter])?;
        prefix = prefix.mul(&AlgebraElement::group(ambient, &step)?)?;
    }
    Ok(acc)
}

/// Verifies the fundamental identity w − 1 = Σ_k ∂w/∂x_k · (x_k − 1)
/// exactly in the group algebra.
pub fn fundamental_check(w: &Word) -> Result<bool> {
    check_free_word(w, 1.min(w.rank()).max(1))?;
    let ambient = Ambient::Semidirect { rank: w.rank() };
    let one = AlgebraElement::one(ambient);
    let mut total = AlgebraElement::zero(ambient);
    for k in 1..=w.rank() {
        let basis_diff = AlgebraElement::group(ambient, &Word::free_x(w.rank(), k, Sign::Plus)?)?
            .sub(&one)?;
        total = total.add(&fox_derivative(w, k)?.mul(&basis_diff)?)?;
    }
    let target = AlgebraElement::group(ambient, w)?.sub(&one)?;
    Ok(total == target)
}

/// The matrix of right translation by `g` on the augmentation ideal of the
/// free part, in the basis x_1 − 1, …, x_n − 1.
///
/// Row l is computed by rewriting x_l · g = g · a_g(x_l) with a_g(x_l) a
/// free word, then taking entry (l, k) = g · ∂(a_g(x_l))/∂x_k. The word
/// `g` lives in the semidirect ambient of its rank: ξ letters for the
/// basis-conjugating part, x letters for the free part.
pub fn fox_action_matrix(g: &Word) -> Result<AlgMatrix> {
    let n = g.rank();
    let ambient = Ambient::Semidirect { rank: n };
    let canon = CanonElement::from_word(ambient, g)?;
    let g_alg = AlgebraElement::term(canon.clone(), LaurentPoly::one());
    let (free, _, auto_inv) = canon
        .semidirect_parts()
        .expect("semidirect ambient produces semidirect elements");

    let mut rows: Vec<Vec<AlgebraElement>> = Vec::with_capacity(n as usize);
    for l in 1..=n {
        let x_l = Word::free_x(n, l, Sign::Plus)?;
        let conjugated = free.inverse().concat(&x_l)?.concat(free)?.reduced();
        let rewritten = auto_inv.apply(&conjugated)?;
        let mut row = Vec::with_capacity(n as usize);
        for k in 1..=n {
            row.push(g_alg.mul(&fox_derivative(&rewritten, k)?)?);
        }
        rows.push(row);
    }
    Matrix::from_rows(Basis::AugIdeal, rows)
}
