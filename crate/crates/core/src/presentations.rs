//! Relator catalogs for the braid-like group families, the distinguished
//! basis-conjugating words ξ_{i,j}, and the projection onto the symmetric
//! group.
//!
//! Six families share the generator alphabets of [`crate::words`]:
//!
//! - Braid: σ_1, …, σ_{n−1} with the braid relation `V1` and distant
//!   commutation `V2`.
//! - Symmetric: τ_1, …, τ_{n−1} with involutivity `V3`, the braid-style
//!   relation `V4`, and distant commutation `V5`.
//! - Virtual: both alphabets, adding mixed distant commutation `V6` and the
//!   mixed relation `V7`: σ_i τ_{i+1} τ_i = τ_{i+1} τ_i σ_{i+1}.
//! - Welded: virtual plus `Forbidden`: τ_i σ_{i+1} σ_i = σ_{i+1} σ_i τ_{i+1}.
//! - TwinWelded: virtual plus the reversed-order variant `Twin`:
//!   τ_{i+1} σ_i σ_{i+1} = σ_i σ_{i+1} τ_i, which is carried to `Forbidden`
//!   by the isomorphism σ_i ↦ σ_i^{-1} of [`twin_to_welded`].
//! - PureWelded: the basis-conjugating generators ξ_{i,j} with the three
//!   commutation families `McCool1`..`McCool3`.
//!
//! Every ξ_{i,j} is realized by an explicit σ/τ word whose action on the
//! free group is the basis conjugation x_i ↦ x_j x_i x_j^{-1} (all other
//! generators fixed). The words produced here are verified against that
//! automorphism in the test suite; the automorphism itself, not any printed
//! word pattern, is the correctness criterion.

use std::fmt;

use crate::words::{
    word_to_auto, FreeAutomorphism, GenKind, GenSymbol, Permutation, Sign, Word,
};
use crate::{Error, Result};

/// The six supported group families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupFamily {
    Braid,
    Symmetric,
    Virtual,
    Welded,
    TwinWelded,
    PureWelded,
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            GroupFamily::Braid => "braid",
            GroupFamily::Symmetric => "sym",
            GroupFamily::Virtual => "vb",
            GroupFamily::Welded => "wb",
            GroupFamily::TwinWelded => "twb",
            GroupFamily::PureWelded => "pwb",
        };
        write!(f, "{tag}")
    }
}

/// A defining relation `lhs = rhs`, with a stable label such as `V7[1]` or
/// `McCool2[1,2,3]` used in verification reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    pub label: String,
    pub lhs: Word,
    pub rhs: Word,
}

fn sig(i: u32) -> GenSymbol {
    GenSymbol::new(GenKind::Sigma(i), Sign::Plus)
}

fn tau(i: u32) -> GenSymbol {
    GenSymbol::new(GenKind::Tau(i), Sign::Plus)
}

fn xi(i: u32, j: u32) -> GenSymbol {
    GenSymbol::new(GenKind::Xi(i, j), Sign::Plus)
}

fn rel(n: u32, label: String, lhs: Vec<GenSymbol>, rhs: Vec<GenSymbol>) -> Result<Relator> {
    Ok(Relator { label, lhs: Word::new(n, lhs)?, rhs: Word::new(n, rhs)? })
}

fn braid_relators(n: u32, out: &mut Vec<Relator>) -> Result<()> {
    for i in 1..n.saturating_sub(1) {
        out.push(rel(
            n,
            format!("V1[{i}]"),
            vec![sig(i), sig(i + 1), sig(i)],
            vec![sig(i + 1), sig(i), sig(i + 1)],
        )?);
    }
    for i in 1..n.saturating_sub(1) {
        for j in (i + 2)..n {
            out.push(rel(n, format!("V2[{i},{j}]"), vec![sig(i), sig(j)], vec![sig(j), sig(i)])?);
        }
    }
    Ok(())
}

fn symmetric_relators(n: u32, out: &mut Vec<Relator>) -> Result<()> {
    for i in 1..n {
        out.push(rel(n, format!("V3[{i}]"), vec![tau(i), tau(i)], vec![])?);
    }
    for i in 1..n.saturating_sub(1) {
        out.push(rel(
            n,
            format!("V4[{i}]"),
            vec![tau(i), tau(i + 1), tau(i)],
            vec![tau(i + 1), tau(i), tau(i + 1)],
        )?);
    }
    for i in 1..n.saturating_sub(1) {
        for j in (i + 2)..n {
            out.push(rel(n, format!("V5[{i},{j}]"), vec![tau(i), tau(j)], vec![tau(j), tau(i)])?);
        }
    }
    Ok(())
}

fn virtual_relators(n: u32, out: &mut Vec<Relator>) -> Result<()> {
    braid_relators(n, out)?;
    symmetric_relators(n, out)?;
    // Mixed distant commutation, one relator per ordered pair (σ-index,
    // τ-index) since the two roles are not interchangeable.
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) >= 2 {
                out.push(rel(
                    n,
                    format!("V6[{i},{j}]"),
                    vec![sig(i), tau(j)],
                    vec![tau(j), sig(i)],
                )?);
            }
        }
    }
    for i in 1..n.saturating_sub(1) {
        out.push(rel(
            n,
            format!("V7[{i}]"),
            vec![sig(i), tau(i + 1), tau(i)],
            vec![tau(i + 1), tau(i), sig(i + 1)],
        )?);
    }
    Ok(())
}

fn mccool_relators(n: u32, out: &mut Vec<Relator>) -> Result<()> {
    let pairs: Vec<(u32, u32)> = (1..=n)
        .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    // Disjoint-support commutation, one relator per unordered pair of
    // generator pairs.
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(s, t) in &pairs[a + 1..] {
            if i != s && i != t && j != s && j != t {
                out.push(rel(
                    n,
                    format!("McCool1[{i},{j},{s},{t}]"),
                    vec![xi(i, j), xi(s, t)],
                    vec![xi(s, t), xi(i, j)],
                )?);
            }
        }
    }
    // Common-target commutation: ξ_{i,j} and ξ_{k,j} commute.
    for i in 1..=n {
        for j in 1..=n {
            for k in (i + 1)..=n {
                if j != i && j != k {
                    out.push(rel(
                        n,
                        format!("McCool2[{i},{j},{k}]"),
                        vec![xi(i, j), xi(k, j)],
                        vec![xi(k, j), xi(i, j)],
                    )?);
                }
            }
        }
    }
    // The product ξ_{i,j} ξ_{k,j} commutes with ξ_{i,k}.
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i != j && i != k && j != k {
                    out.push(rel(
                        n,
                        format!("McCool3[{i},{j},{k}]"),
                        vec![xi(i, j), xi(k, j), xi(i, k)],
                        vec![xi(i, k), xi(i, j), xi(k, j)],
                    )?);
                }
            }
        }
    }
    Ok(())
}

/// The complete defining relator list of a family at rank `n`, in a fixed
/// deterministic order (rule families in catalog order, indices ascending).
pub fn relators(family: GroupFamily, n: u32) -> Result<Vec<Relator>> {
    if n < 2 {
        return Err(Error::IndexOutOfRange(format!("family rank must be at least 2, got {n}")));
    }
    let mut out = Vec::new();
    match family {
        GroupFamily::Braid => braid_relators(n, &mut out)?,
        GroupFamily::Symmetric => symmetric_relators(n, &mut out)?,
        GroupFamily::Virtual => virtual_relators(n, &mut out)?,
        GroupFamily::Welded => {
            virtual_relators(n, &mut out)?;
            for i in 1..n.saturating_sub(1) {
                out.push(rel(
                    n,
                    format!("Forbidden[{i}]"),
                    vec![tau(i), sig(i + 1), sig(i)],
                    vec![sig(i + 1), sig(i), tau(i + 1)],
                )?);
            }
        }
        GroupFamily::TwinWelded => {
            virtual_relators(n, &mut out)?;
            for i in 1..n.saturating_sub(1) {
                out.push(rel(
                    n,
                    format!("Twin[{i}]"),
                    vec![tau(i + 1), sig(i), sig(i + 1)],
                    vec![sig(i), sig(i + 1), tau(i)],
                )?);
            }
        }
        GroupFamily::PureWelded => mccool_relators(n, &mut out)?,
    }
    Ok(out)
}

/// The reversal of the mixed relation `V7`: τ_i τ_{i+1} σ_i = σ_{i+1} τ_i
/// τ_{i+1}. It is a consequence of the virtual relators, not a defining
/// one, and is therefore kept out of [`relators`].
pub fn mirror_relator(i: u32, n: u32) -> Result<Relator> {
    if i < 1 || i + 2 > n {
        return Err(Error::IndexOutOfRange(format!(
            "mirror relator index {i} is not valid at rank {n}"
        )));
    }
    rel(
        n,
        format!("Mirror[{i}]"),
        vec![tau(i), tau(i + 1), sig(i)],
        vec![sig(i + 1), tau(i), tau(i + 1)],
    )
}

/// The basis conjugation x_i ↦ x_j^e x_i x_j^{-e}, all other generators
/// fixed; `e` is +1 for `Sign::Plus`.
fn conjugation_auto(i: u32, j: u32, sign: Sign, n: u32) -> Result<FreeAutomorphism> {
    let image = Word::new(
        n,
        vec![
            GenSymbol::new(GenKind::FreeX(j), sign),
            GenSymbol::new(GenKind::FreeX(i), Sign::Plus),
            GenSymbol::new(GenKind::FreeX(j), sign.flip()),
        ],
    )?;
    let mut images: Vec<Word> = (1..=n).map(|k| Word::free_x(n, k, Sign::Plus).unwrap()).collect();
    images[i as usize - 1] = image;
    FreeAutomorphism::from_images(n, images)
}

fn check_xi_indices(i: u32, j: u32, n: u32) -> Result<()> {
    if i < 1 || j < 1 || i > n || j > n || i == j {
        return Err(Error::IndexOutOfRange(format!(
            "basis-conjugating indices ({i},{j}) are not valid at rank {n}"
        )));
    }
    Ok(())
}

/// The word action of ξ_{i,j} on the free group: x_i ↦ x_j x_i x_j^{-1},
/// every other generator fixed. This automorphism is the correctness
/// criterion for [`xi_word`].
pub fn xi_action(i: u32, j: u32, n: u32) -> Result<FreeAutomorphism> {
    check_xi_indices(i, j, n)?;
    conjugation_auto(i, j, Sign::Plus, n)
}

/// The inverse of [`xi_action`]: x_i ↦ x_j^{-1} x_i x_j.
pub fn xi_action_inverse(i: u32, j: u32, n: u32) -> Result<FreeAutomorphism> {
    check_xi_indices(i, j, n)?;
    conjugation_auto(i, j, Sign::Minus, n)
}

/// A σ/τ word realizing ξ_{i,j}: its action is exactly [`xi_action`]`(i, j)`
/// and its underlying permutation is trivial.
///
/// For i < j the word is τ_i τ_{i+1} ⋯ τ_{j−2} σ_{j−1} τ_{j−1} τ_{j−2} ⋯ τ_i
/// (so ξ_{i,i+1} = σ_i τ_i); for j < i it is the reflected form
/// τ_{i−1} ⋯ τ_{j+1} τ_j σ_j τ_{j+1} ⋯ τ_{i−1} (so ξ_{j+1,j} = τ_j σ_j).
pub fn xi_word(i: u32, j: u32, n: u32) -> Result<Word> {
    check_xi_indices(i, j, n)?;
    let mut letters = Vec::new();
    if i < j {
        for k in i..=j.saturating_sub(2) {
            letters.push(tau(k));
        }
        letters.push(sig(j - 1));
        letters.push(tau(j - 1));
        for k in (i..=j.saturating_sub(2)).rev() {
            letters.push(tau(k));
        }
    } else {
        for k in ((j + 1)..i).rev() {
            letters.push(tau(k));
        }
        letters.push(tau(j));
        letters.push(sig(j));
        for k in (j + 1)..i {
            letters.push(tau(k));
        }
    }
    Word::new(n, letters)
}

/// Replaces every ξ_{i,j} letter by the σ/τ word of [`xi_word`] (inverted
/// for negative letters); σ/τ letters pass through unchanged.
pub fn expand_xi_word(w: &Word) -> Result<Word> {
    let n = w.rank();
    let mut out = Word::identity(n);
    for &letter in w.letters() {
        let piece = match letter.kind {
            GenKind::Xi(i, j) => {
                let base = xi_word(i, j, n)?;
                match letter.sign {
                    Sign::Plus => base,
                    Sign::Minus => base.inverse(),
                }
            }
            GenKind::Sigma(_) | GenKind::Tau(_) => Word::new(n, vec![letter])?,
            GenKind::FreeX(_) => {
                return Err(Error::UnsupportedLetter {
                    letter: letter.to_string(),
                    operation: "expansion into braid-symmetric letters".into(),
                })
            }
        };
        out = out.concat(&piece)?;
    }
    Ok(out)
}

/// The letterwise isomorphism from the twin-style family to the welded
/// family: σ_i ↦ σ_i^{-1}, τ_i ↦ τ_i. Other letters are left unchanged.
pub fn twin_to_welded(w: &Word) -> Word {
    let letters = w
        .letters()
        .iter()
        .map(|&g| match g.kind {
            GenKind::Sigma(_) => g.inverse(),
            _ => g,
        })
        .collect();
    Word::new(w.rank(), letters).expect("letter indices unchanged")
}

/// The underlying permutation of a word: every σ_i and τ_i contributes the
/// adjacent transposition (i, i+1), letters acting in word order; signs are
/// irrelevant because transpositions are involutions. Basis-conjugating and
/// free letters are pure and contribute nothing.
pub fn permutation_of(w: &Word) -> Result<Permutation> {
    let n = w.rank();
    let mut p = Permutation::identity(n);
    for letter in w.letters() {
        if let GenKind::Sigma(i) | GenKind::Tau(i) = letter.kind {
            p = p.compose(&Permutation::transposition(n, i)?)?;
        }
    }
    Ok(p)
}

/// True iff both sides of the relator act identically on the free group.
pub fn relator_holds_under_action(r: &Relator) -> Result<bool> {
    Ok(word_to_auto(&r.lhs)? == word_to_auto(&r.rhs)?)
}
