//! A two-parameter Burau variant for virtual braid words, with matrix
//! entries in the group algebra of the rank-(n+1) welded ambient.
//!
//! Each braid generator σ_i and symmetric generator τ_i of the rank-n
//! virtual braid group maps to an n×n matrix whose entries mix two formal
//! unit parameters α, β with group elements: σ_i or τ_i itself on the
//! diagonal away from rows i, i+1, and a 2×2 block at rows i, i+1
//!
//! ```text
//! σ_i ↦ [ σ_i(1 − α·x_i x_{i+1} x_i^{-1})   α·σ_i x_i ]      τ_i ↦ [ 0        β^{-1}τ_i ]
//!        [ σ_i                               0         ]            [ β·τ_i   0          ]
//! ```
//!
//! where x_k abbreviates the conjugating generator ξ_{n+1,k} of the
//! ambient group. Inverse generators map to the exact block inverses,
//! which were solved once from the 2×2 block shape and are instantiated
//! directly. Collapsing every group element to 1 (the all-to-one
//! augmentation) yields the evaluated Laurent form, whose 2×2 blocks are
//! the familiar [[1−α, α], [1, 0]] and [[0, β^{-1}], [β, 0]].
//!
//! Products over words extend the assignment multiplicatively. All braid,
//! involution, and mixed-commutation relations hold at the symbolic level;
//! the overcrossing-style relation mixing τσσ with σστ holds only after
//! specializing β, which is what the verification module's factor analysis
//! measures.

use std::collections::HashMap;

use crate::galgebra::{
    augment_matrix, AlgMatrix, AlgebraElement, Ambient, AugmentMode, Basis, Matrix, PolyMatrix,
};
use crate::laurent::{LaurentPoly, Param};
use crate::words::{GenKind, GenSymbol, Sign, Word};
use crate::{Error, Result};

/// Rank and formal parameters of the representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BurauParams {
    pub n: u32,
    pub alpha: Param,
    pub beta: Param,
}

impl BurauParams {
    /// The standard parameter pair (α, β) at rank n ≥ 2.
    pub fn standard(n: u32) -> Result<BurauParams> {
        if n < 2 {
            return Err(Error::IndexOutOfRange(format!("rank {n} below 2")));
        }
        Ok(BurauParams { n, alpha: Param::Alpha, beta: Param::Beta })
    }

    fn ambient(&self) -> Ambient {
        Ambient::Welded { rank: self.n + 1 }
    }
}

/// Letter of the conjugating generator ξ_{n+1,k}, the free element x_k of
/// the rank-(n+1) ambient.
fn x_letter(p: &BurauParams, k: u32, sign: Sign) -> GenSymbol {
    GenSymbol::new(GenKind::Xi(p.n + 1, k), sign)
}

fn group_term(p: &BurauParams, coeff: &LaurentPoly, letters: Vec<GenSymbol>) -> Result<AlgebraElement> {
    let w = Word::new(p.n + 1, letters)?;
    AlgebraElement::scaled_group(p.ambient(), coeff, &w)
}

fn check_generator(g: GenSymbol, n: u32) -> Result<u32> {
    let i = match g.kind {
        GenKind::Sigma(i) | GenKind::Tau(i) => i,
        _ => {
            return Err(Error::UnsupportedLetter {
                letter: g.to_string(),
                operation: "Burau-variant matrix".into(),
            })
        }
    };
    if i + 1 > n {
        return Err(Error::IndexOutOfRange(format!(
            "generator index {i} needs rank at least {}, have {n}",
            i + 1
        )));
    }
    Ok(i)
}

/// The symbolic matrix of one generator letter (σ_i^{±1} or τ_i^{±1}).
pub fn burau_symbolic(g: GenSymbol, p: &BurauParams) -> Result<AlgMatrix> {
    let i = check_generator(g, p.n)?;
    let one = LaurentPoly::one();
    let alpha = LaurentPoly::var(p.alpha);
    let alpha_inv = LaurentPoly::var_pow(p.alpha, -1);
    let beta = LaurentPoly::var(p.beta);
    let beta_inv = LaurentPoly::var_pow(p.beta, -1);
    let diag = group_term(p, &one, vec![g])?;
    let zero = AlgebraElement::zero(p.ambient());

    // The 2×2 block at rows i, i+1 (0-based i−1, i) in row-major order.
    let block: [AlgebraElement; 4] = match (g.kind, g.sign) {
        (GenKind::Sigma(_), Sign::Plus) => {
            let conjugate = vec![
                g,
                x_letter(p, i, Sign::Plus),
                x_letter(p, i + 1, Sign::Plus),
                x_letter(p, i, Sign::Minus),
            ];
            [
                diag.clone().sub(&group_term(p, &alpha, conjugate)?)?,
                group_term(p, &alpha, vec![g, x_letter(p, i, Sign::Plus)])?,
                diag.clone(),
                zero.clone(),
            ]
        }
        (GenKind::Sigma(_), Sign::Minus) => {
            // Solved from B·A = A·B = I for the positive block A.
            let xi_inv_s = vec![x_letter(p, i, Sign::Minus), g];
            [
                zero.clone(),
                diag.clone(),
                group_term(p, &alpha_inv, xi_inv_s.clone())?,
                group_term(
                    p,
                    &one,
                    vec![x_letter(p, i + 1, Sign::Plus), x_letter(p, i, Sign::Minus), g],
                )?
                .sub(&group_term(p, &alpha_inv, xi_inv_s)?)?,
            ]
        }
        (GenKind::Tau(_), _) => [
            zero.clone(),
            group_term(p, &beta_inv, vec![g])?,
            group_term(p, &beta, vec![g])?,
            zero.clone(),
        ],
        _ => unreachable!("validated above"),
    };

    let n = p.n as usize;
    let block_row = i as usize - 1;
    let mut rows = vec![vec![zero; n]; n];
    for (l, row) in rows.iter_mut().enumerate() {
        if l == block_row || l == block_row + 1 {
            let r = l - block_row;
            row[block_row] = block[2 * r].clone();
            row[block_row + 1] = block[2 * r + 1].clone();
        } else {
            row[l] = diag.clone();
        }
    }
    Matrix::from_rows(Basis::Delta, rows)
}

/// The Laurent matrix of one generator, the all-to-one collapse of the
/// symbolic one.
pub fn burau_evaluated(g: GenSymbol, p: &BurauParams) -> Result<PolyMatrix> {
    augment_matrix(&burau_symbolic(g, p)?, AugmentMode::AllToOne)
}

/// Product of symbolic generator matrices in word order; the identity
/// matrix for the empty word.
pub fn word_matrix_symbolic(w: &Word, p: &BurauParams) -> Result<AlgMatrix> {
    if w.rank() != p.n {
        return Err(Error::RankMismatch(p.n, w.rank()));
    }
    let mut cache: HashMap<GenSymbol, AlgMatrix> = HashMap::new();
    let mut acc = Matrix::identity(p.n as usize, Basis::Delta, &AlgebraElement::one(p.ambient()));
    for &letter in w.letters() {
        if !cache.contains_key(&letter) {
            cache.insert(letter, burau_symbolic(letter, p)?);
        }
        acc = acc.mul(&cache[&letter])?;
    }
    Ok(acc)
}

/// Product of evaluated generator matrices in word order.
pub fn word_matrix_evaluated(w: &Word, p: &BurauParams) -> Result<PolyMatrix> {
    if w.rank() != p.n {
        return Err(Error::RankMismatch(p.n, w.rank()));
    }
    let mut cache: HashMap<GenSymbol, PolyMatrix> = HashMap::new();
    let mut acc = Matrix::identity(p.n as usize, Basis::Delta, &LaurentPoly::one());
    for &letter in w.letters() {
        if !cache.contains_key(&letter) {
            cache.insert(letter, burau_evaluated(letter, p)?);
        }
        acc = acc.mul(&cache[&letter])?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{relators, GroupFamily};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeMap;

    fn sym(kind: GenKind, sign: Sign) -> GenSymbol {
        GenSymbol::new(kind, sign)
    }

    fn entry(p: &BurauParams, coeff: &LaurentPoly, text: &str) -> AlgebraElement {
        AlgebraElement::scaled_group(
            Ambient::Welded { rank: p.n + 1 },
            coeff,
            &Word::parse(text, p.n + 1).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn tau_matrix_matches_display() {
        let p = BurauParams::standard(2).unwrap();
        let m = burau_symbolic(sym(GenKind::Tau(1), Sign::Plus), &p).unwrap();
        let beta = LaurentPoly::var(Param::Beta);
        let beta_inv = LaurentPoly::var_pow(Param::Beta, -1);
        let zero = AlgebraElement::zero(Ambient::Welded { rank: 3 });
        let expected = Matrix::from_rows(
            Basis::Delta,
            vec![
                vec![zero.clone(), entry(&p, &beta_inv, "t1")],
                vec![entry(&p, &beta, "t1"), zero],
            ],
        )
        .unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn sigma_matrix_keeps_untouched_rows_diagonal() {
        let p = BurauParams::standard(3).unwrap();
        let m = burau_symbolic(sym(GenKind::Sigma(2), Sign::Plus), &p).unwrap();
        let one = LaurentPoly::one();
        assert_eq!(*m.entry(0, 0), entry(&p, &one, "s2"));
        assert!(m.entry(0, 1).is_zero());
        assert!(m.entry(0, 2).is_zero());
        // Row 2 block: σ_2(1 − α·x_2x_3x_2^{-1}) then α·σ_2x_2, with x_k = ξ_{4,k}.
        let alpha = LaurentPoly::var(Param::Alpha);
        let lead = entry(&p, &one, "s2").sub(&entry(&p, &alpha, "s2 q4.2 q4.3 Q4.2")).unwrap();
        assert_eq!(*m.entry(1, 1), lead);
        assert_eq!(*m.entry(1, 2), entry(&p, &alpha, "s2 q4.2"));
        assert_eq!(*m.entry(2, 1), entry(&p, &one, "s2"));
        assert!(m.entry(2, 2).is_zero());
    }

    #[test]
    fn involution_squares_to_identity_symbolically() {
        let p = BurauParams::standard(2).unwrap();
        let w = Word::parse("t1 t1", 2).unwrap();
        assert!(word_matrix_symbolic(&w, &p).unwrap().is_identity());
    }

    #[test]
    fn evaluated_matrices_match_displays() {
        let p2 = BurauParams::standard(2).unwrap();
        let m = burau_evaluated(sym(GenKind::Sigma(1), Sign::Plus), &p2).unwrap();
        let one = LaurentPoly::one();
        let alpha = LaurentPoly::var(Param::Alpha);
        let expected = Matrix::from_rows(
            Basis::Delta,
            vec![
                vec![one.sub(&alpha), alpha.clone()],
                vec![one.clone(), LaurentPoly::zero()],
            ],
        )
        .unwrap();
        assert_eq!(m, expected);

        let p3 = BurauParams::standard(3).unwrap();
        let t2 = burau_evaluated(sym(GenKind::Tau(2), Sign::Plus), &p3).unwrap();
        let beta = LaurentPoly::var(Param::Beta);
        let beta_inv = LaurentPoly::var_pow(Param::Beta, -1);
        let zero = LaurentPoly::zero();
        let expected = Matrix::from_rows(
            Basis::Delta,
            vec![
                vec![one.clone(), zero.clone(), zero.clone()],
                vec![zero.clone(), zero.clone(), beta_inv],
                vec![zero.clone(), beta, zero.clone()],
            ],
        )
        .unwrap();
        assert_eq!(t2, expected);
    }

    #[test]
    fn alpha_one_specialization_is_a_swap() {
        let p = BurauParams::standard(2).unwrap();
        let m = burau_evaluated(sym(GenKind::Sigma(1), Sign::Plus), &p).unwrap();
        let mut bind = BTreeMap::new();
        bind.insert(Param::Alpha, LaurentPoly::one());
        let swapped = m.substitute(&bind).unwrap();
        let one = LaurentPoly::one();
        let zero = LaurentPoly::zero();
        let expected = Matrix::from_rows(
            Basis::Delta,
            vec![vec![zero.clone(), one.clone()], vec![one, zero]],
        )
        .unwrap();
        assert_eq!(swapped, expected);
    }

    #[test]
    fn generator_inverses_are_exact() {
        let p = BurauParams::standard(3).unwrap();
        for kind in [GenKind::Sigma(1), GenKind::Sigma(2), GenKind::Tau(1), GenKind::Tau(2)] {
            let plus = burau_symbolic(sym(kind, Sign::Plus), &p).unwrap();
            let minus = burau_symbolic(sym(kind, Sign::Minus), &p).unwrap();
            assert!(plus.mul(&minus).unwrap().is_identity(), "{kind:?} right inverse");
            assert!(minus.mul(&plus).unwrap().is_identity(), "{kind:?} left inverse");
        }
    }

    #[test]
    fn random_words_invert_exactly() {
        let p = BurauParams::standard(3).unwrap();
        let mut rng = StdRng::seed_from_u64(0xb0b0);
        for _ in 0..25 {
            let len = rng.gen_range(0..=6);
            let letters: Vec<GenSymbol> = (0..len)
                .map(|_| {
                    let i = rng.gen_range(1..3);
                    let kind =
                        if rng.gen_bool(0.5) { GenKind::Sigma(i) } else { GenKind::Tau(i) };
                    let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                    sym(kind, sign)
                })
                .collect();
            let w = Word::new(3, letters).unwrap();
            let m = word_matrix_evaluated(&w, &p).unwrap();
            let m_inv = word_matrix_evaluated(&w.inverse(), &p).unwrap();
            assert!(m.mul(&m_inv).unwrap().is_identity());
        }
    }

    #[test]
    fn virtual_relators_hold_in_both_modes() {
        let p = BurauParams::standard(3).unwrap();
        for rel in relators(GroupFamily::Virtual, 3).unwrap() {
            let lhs = word_matrix_symbolic(&rel.lhs, &p).unwrap();
            let rhs = word_matrix_symbolic(&rel.rhs, &p).unwrap();
            assert_eq!(lhs, rhs, "symbolic {}", rel.label);
            let lhs_eval = word_matrix_evaluated(&rel.lhs, &p).unwrap();
            let rhs_eval = word_matrix_evaluated(&rel.rhs, &p).unwrap();
            assert_eq!(lhs_eval, rhs_eval, "evaluated {}", rel.label);
        }
    }

    #[test]
    fn augmentation_commutes_with_word_products() {
        let p = BurauParams::standard(3).unwrap();
        let w = Word::parse("s1 t2 S2 t1 s2", 3).unwrap();
        let symbolic = word_matrix_symbolic(&w, &p).unwrap();
        let direct = word_matrix_evaluated(&w, &p).unwrap();
        assert_eq!(augment_matrix(&symbolic, AugmentMode::AllToOne).unwrap(), direct);
    }

    #[test]
    fn overcrossing_relation_needs_beta_one() {
        // τ_1σ_2σ_1 = σ_2σ_1τ_2 fails generically and holds exactly at β = 1.
        let p = BurauParams::standard(3).unwrap();
        let lhs = word_matrix_evaluated(&Word::parse("t1 s2 s1", 3).unwrap(), &p).unwrap();
        let rhs = word_matrix_evaluated(&Word::parse("s2 s1 t2", 3).unwrap(), &p).unwrap();
        assert_ne!(lhs, rhs);
        let mut beta_one = BTreeMap::new();
        beta_one.insert(Param::Beta, LaurentPoly::one());
        assert_eq!(lhs.substitute(&beta_one).unwrap(), rhs.substitute(&beta_one).unwrap());
    }

    #[test]
    fn mirrored_overcrossing_needs_beta_inverse_alpha() {
        // τ_2σ_1σ_2 = σ_1σ_2τ_1 fails generically, still fails at β = α,
        // and holds exactly at β = α^{-1}.
        let p = BurauParams::standard(3).unwrap();
        let lhs = word_matrix_evaluated(&Word::parse("t2 s1 s2", 3).unwrap(), &p).unwrap();
        let rhs = word_matrix_evaluated(&Word::parse("s1 s2 t1", 3).unwrap(), &p).unwrap();
        assert_ne!(lhs, rhs);

        let mut beta_alpha = BTreeMap::new();
        beta_alpha.insert(Param::Beta, LaurentPoly::var(Param::Alpha));
        assert_ne!(
            lhs.substitute(&beta_alpha).unwrap(),
            rhs.substitute(&beta_alpha).unwrap()
        );

        let mut beta_alpha_inv = BTreeMap::new();
        beta_alpha_inv.insert(Param::Beta, LaurentPoly::var_pow(Param::Alpha, -1));
        assert_eq!(
            lhs.substitute(&beta_alpha_inv).unwrap(),
            rhs.substitute(&beta_alpha_inv).unwrap()
        );
    }

    #[test]
    fn invalid_letters_and_ranks_are_rejected() {
        let p = BurauParams::standard(3).unwrap();
        assert!(burau_symbolic(sym(GenKind::Sigma(3), Sign::Plus), &p).is_err());
        assert!(burau_symbolic(sym(GenKind::FreeX(1), Sign::Plus), &p).is_err());
        assert!(BurauParams::standard(1).is_err());
        let w = Word::parse("s1", 2).unwrap();
        assert!(matches!(word_matrix_symbolic(&w, &p), Err(Error::RankMismatch(3, 2))));
    }
}
