//! Lift of the current operations to the free tensor algebra.
//!
//! Here the enveloping slot is replaced by a free word with no reordering:
//! multiplication is concatenation, the coproduct takes order-preserving
//! subsequence splits, and the antipode reverses with a (-1)^length sign and
//! performs no normalization. The five operations carry over with the same
//! formulas. The quotient map `phi` normalizes each word into the ordered
//! basis and intertwines every operation.
//!
//! The point of the lift is what fails: the boundary no longer squares to
//! zero, because the two single-replacement terms land in concatenations
//! that the free algebra keeps apart. `boundary_square_witness` searches a
//! finite family for a term with a nonzero double boundary; `phi` sends any
//! such residue to zero.

use crate::context::Context;
use crate::currents::{CurrentElement, PointMap, TensorSquareElement};
use crate::enveloping::generator_derivation;
use crate::error::{Error, Result};
use crate::exterior::{
    ad_extend_ext, ext_antipode, ext_from_coords, mono_splits, wedge, ExtElement, ExtMonomial,
};
use crate::groups::GroupElement;
use crate::linalg::SMat;
use crate::linear::LinExpr;
use crate::algebra::LieAlgebra;
use crate::scalar::Scalar;

/// Word in the free tensor algebra: any letter sequence, kept as written.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct TensorWord(Vec<u8>);

impl TensorWord {
    pub fn new(letters: Vec<u8>) -> Self {
        TensorWord(letters)
    }

    pub fn unit() -> Self {
        TensorWord(Vec::new())
    }

    pub fn generator(i: u8) -> Self {
        TensorWord(vec![i])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> Option<u8> {
        self.0.iter().copied().max()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        TensorWord(letters)
    }

    pub fn reversed(&self) -> Self {
        let mut letters = self.0.clone();
        letters.reverse();
        TensorWord(letters)
    }
}

/// Finite rational combination of free words.
pub type FreeElement = LinExpr<TensorWord>;

impl FreeElement {
    pub fn one() -> Self {
        FreeElement::from_term(TensorWord::unit(), Scalar::one())
    }
}

/// Vector of coordinates as a combination of single letters.
pub fn free_from_coords(v: &[Scalar]) -> FreeElement {
    let mut out = FreeElement::zero();
    for (i, c) in v.iter().enumerate() {
        out.add_term(TensorWord::generator(i as u8), c.clone());
    }
    out
}

/// Concatenation product, extended bilinearly.
pub fn free_mul(a: &FreeElement, b: &FreeElement) -> FreeElement {
    let mut out = FreeElement::zero();
    for (u, c) in a.terms() {
        for (w, d) in b.terms() {
            out.add_term(u.concat(w), c * d);
        }
    }
    out
}

/// Order-preserving subsequence splits of a word; every letter goes to one
/// leg, relative order kept on both sides.
pub fn word_splits(w: &TensorWord) -> Vec<(TensorWord, TensorWord)> {
    let letters = w.letters();
    let n = letters.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1u32 << n) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (t, &l) in letters.iter().enumerate() {
            if mask & (1 << t) != 0 {
                left.push(l);
            } else {
                right.push(l);
            }
        }
        out.push((TensorWord(left), TensorWord(right)));
    }
    out
}

/// Coefficient of the empty word.
pub fn free_counit(x: &FreeElement) -> Scalar {
    x.coeff(&TensorWord::unit())
}

/// (-1)^length times the reversed word; no reordering beyond the reversal.
pub fn free_antipode(x: &FreeElement) -> FreeElement {
    let mut out = FreeElement::zero();
    for (w, c) in x.terms() {
        out.add_term(w.reversed(), c * &Scalar::sign_pow(w.len()));
    }
    out
}

/// Action of a free word on a wedge: each letter acts as the bracket
/// derivation, rightmost letter first, so concatenation composes actions.
pub fn free_act_ext(alg: &LieAlgebra, v: &FreeElement, x: &ExtElement) -> Result<ExtElement> {
    let dim = alg.dim() as u8;
    let mut out = ExtElement::zero();
    for (w, c) in v.terms() {
        if let Some(l) = w.max_letter() {
            if l >= dim {
                return Err(Error::Index(format!("letter {l} in dimension {dim}")));
            }
        }
        let mut acc = x.scaled(c);
        for &letter in w.letters().iter().rev() {
            let mut next = ExtElement::zero();
            for (m, d) in acc.terms() {
                next.add_assign(&generator_derivation(alg, letter, m).scaled(d));
            }
            acc = next;
            if acc.is_zero() {
                break;
            }
        }
        out.add_assign(&acc);
    }
    Ok(out)
}

/// Letterwise image under an invertible matrix, multiplied by concatenation.
pub fn ad_extend_free(a: &SMat, v: &FreeElement) -> Result<FreeElement> {
    let mut out = FreeElement::zero();
    for (w, c) in v.terms() {
        let mut acc = FreeElement::from_term(TensorWord::unit(), c.clone());
        for &letter in w.letters() {
            if letter as usize >= a.size() {
                return Err(Error::Index(format!(
                    "letter {letter} outside matrix of size {}",
                    a.size()
                )));
            }
            acc = free_mul(&acc, &free_from_coords(&a.col(letter as usize)));
        }
        out.add_assign(&acc);
    }
    Ok(out)
}

/// Basis key of a lifted current: point, free word, wedge word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LiftKey {
    pub point: GroupElement,
    pub word: TensorWord,
    pub ext: ExtMonomial,
}

impl LiftKey {
    pub fn grade(&self) -> usize {
        self.ext.grade()
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// Finite rational combination of lifted keys.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorLiftElement {
    pub(crate) ctx: u64,
    pub(crate) terms: LinExpr<LiftKey>,
}

impl TensorLiftElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.num_terms()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LiftKey, &Scalar)> {
        self.terms.terms()
    }

    pub fn coeff(&self, key: &LiftKey) -> Scalar {
        self.terms.coeff(key)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::Context("adding lifts from different contexts".into()));
        }
        Ok(TensorLiftElement { ctx: self.ctx, terms: self.terms.plus(&other.terms) })
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::Context("subtracting lifts from different contexts".into()));
        }
        Ok(TensorLiftElement { ctx: self.ctx, terms: self.terms.minus(&other.terms) })
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        TensorLiftElement { ctx: self.ctx, terms: self.terms.scaled(c) }
    }

    pub fn neg(&self) -> Self {
        TensorLiftElement { ctx: self.ctx, terms: self.terms.neg() }
    }
}

/// Element of the tensor square of the lift.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiftSquareElement {
    pub(crate) ctx: u64,
    pub(crate) terms: LinExpr<(LiftKey, LiftKey)>,
}

impl LiftSquareElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.num_terms()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(LiftKey, LiftKey), &Scalar)> {
        self.terms.terms()
    }
}

impl Context {
    fn check_lift_key(&self, key: &LiftKey) -> Result<()> {
        self.group().contains(&key.point)?;
        let dim = self.dim() as u8;
        if let Some(l) = key.word.max_letter() {
            if l >= dim {
                return Err(Error::Index(format!("word letter {l} in dimension {dim}")));
            }
        }
        if let Some(l) = key.ext.max_letter() {
            if l >= dim {
                return Err(Error::Index(format!("wedge letter {l} in dimension {dim}")));
            }
        }
        Ok(())
    }

    pub(crate) fn check_lift(&self, x: &TensorLiftElement) -> Result<()> {
        if x.ctx != self.id() {
            return Err(Error::Context(format!(
                "lift built in another context used in context {}",
                self.label()
            )));
        }
        Ok(())
    }

    pub fn zero_lift(&self) -> TensorLiftElement {
        TensorLiftElement { ctx: self.id(), terms: LinExpr::zero() }
    }

    pub fn unit_lift(&self) -> TensorLiftElement {
        TensorLiftElement {
            ctx: self.id(),
            terms: LinExpr::from_term(
                LiftKey {
                    point: self.group().identity(),
                    word: TensorWord::unit(),
                    ext: ExtMonomial::unit(),
                },
                Scalar::one(),
            ),
        }
    }

    pub fn lift_term(
        &self,
        point: GroupElement,
        word: TensorWord,
        ext: ExtMonomial,
        coeff: Scalar,
    ) -> Result<TensorLiftElement> {
        let key = LiftKey { point, word, ext };
        self.check_lift_key(&key)?;
        Ok(TensorLiftElement { ctx: self.id(), terms: LinExpr::from_term(key, coeff) })
    }

    pub fn lift_from_parts(
        &self,
        point: &GroupElement,
        word: &FreeElement,
        ext: &ExtElement,
    ) -> Result<TensorLiftElement> {
        self.group().contains(point)?;
        let mut out = self.zero_lift();
        for (w, cw) in word.terms() {
            for (x, cx) in ext.terms() {
                let key = LiftKey { point: point.clone(), word: w.clone(), ext: x.clone() };
                self.check_lift_key(&key)?;
                out.terms.add_term(key, cw * cx);
            }
        }
        Ok(out)
    }

    /// Boundary with free left concatenation in place of the ordered
    /// product; the wedge part is handled exactly as for currents.
    pub fn lift_boundary(&self, x: &TensorLiftElement) -> Result<TensorLiftElement> {
        self.check_lift(x)?;
        let alg = self.algebra();
        let mut out = self.zero_lift();
        for (key, c) in x.terms() {
            let letters = key.ext.letters();
            if letters.is_empty() {
                continue;
            }
            let a_inv = self.act_matrix_inv(&key.point)?;
            let w_elem = FreeElement::from_term(key.word.clone(), Scalar::one());
            for (i, &li) in letters.iter().enumerate() {
                let left = free_mul(&free_from_coords(&a_inv.col(li as usize)), &w_elem);
                let rest: Vec<u8> =
                    letters.iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &l)| l).collect();
                let rest = ExtElement::from_term(
                    ExtMonomial::new(rest)?,
                    &Scalar::sign_pow(i) * c,
                );
                out = out.plus(&self.lift_from_parts(&key.point, &left, &rest)?)?;
            }
            for i in 0..letters.len() {
                for j in (i + 1)..letters.len() {
                    let bracket = ext_from_coords(alg.bracket_basis(letters[i], letters[j]));
                    if bracket.is_zero() {
                        continue;
                    }
                    let rest: Vec<u8> = letters
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| t != i && t != j)
                        .map(|(_, &l)| l)
                        .collect();
                    let rest = ExtElement::from_term(
                        ExtMonomial::new(rest)?,
                        &Scalar::sign_pow(i + j + 1) * c,
                    );
                    let front = wedge(&bracket, &rest);
                    out = out.plus(&self.lift_from_parts(&key.point, &w_elem, &front)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Coproduct: subsequence splits of the word, shuffle splits of the
    /// wedge, both legs at the same point.
    pub fn lift_coproduct(&self, x: &TensorLiftElement) -> Result<LiftSquareElement> {
        self.check_lift(x)?;
        let mut out = LiftSquareElement { ctx: self.id(), terms: LinExpr::zero() };
        for (key, c) in x.terms() {
            let odd_splits = mono_splits(&key.ext);
            for (w1, w2) in word_splits(&key.word) {
                for (x1, x2, negated) in &odd_splits {
                    let k1 =
                        LiftKey { point: key.point.clone(), word: w1.clone(), ext: x1.clone() };
                    let k2 =
                        LiftKey { point: key.point.clone(), word: w2.clone(), ext: x2.clone() };
                    out.terms.add_term(
                        (k1, k2),
                        if *negated { -c.clone() } else { c.clone() },
                    );
                }
            }
        }
        Ok(out)
    }

    pub fn lift_counit(&self, x: &TensorLiftElement) -> Result<PointMap> {
        self.check_lift(x)?;
        let mut out = PointMap::zero();
        for (key, c) in x.terms() {
            if key.word.is_unit() && key.ext.is_unit() {
                out.add_term(key.point.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Convolution with free splits and concatenation.
    pub fn lift_convolve(
        &self,
        x: &TensorLiftElement,
        y: &TensorLiftElement,
    ) -> Result<TensorLiftElement> {
        self.check_lift(x)?;
        self.check_lift(y)?;
        let alg = self.algebra();
        let mut out = self.zero_lift();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                let pq = self.group().mul(&a.point, &b.point)?;
                let a_p = self.act_matrix(&a.point)?;
                let a_qinv = self.act_matrix_inv(&b.point)?;
                let w_elem = FreeElement::from_term(b.word.clone(), Scalar::one());
                let alpha = ExtElement::from_term(a.ext.clone(), Scalar::one());
                let beta = ExtElement::from_term(b.ext.clone(), Scalar::one());
                for (v1, v2) in word_splits(&a.word) {
                    let left = free_mul(
                        &ad_extend_free(&a_qinv, &FreeElement::from_term(v1, Scalar::one()))?,
                        &w_elem,
                    );
                    let acted = free_act_ext(
                        alg,
                        &FreeElement::from_term(v2, Scalar::one()),
                        &beta,
                    )?;
                    if acted.is_zero() {
                        continue;
                    }
                    let odd = wedge(&alpha, &ad_extend_ext(&a_p, &acted)?);
                    if odd.is_zero() {
                        continue;
                    }
                    out = out.plus(&self.lift_from_parts(&pq, &left, &odd)?.scaled(&(c * d)))?;
                }
            }
        }
        Ok(out)
    }

    /// Antipode with the free reversal in place of the normalized one.
    pub fn lift_antipode(&self, x: &TensorLiftElement) -> Result<TensorLiftElement> {
        self.check_lift(x)?;
        let alg = self.algebra();
        let mut out = self.zero_lift();
        for (key, c) in x.terms() {
            let pinv = self.group().inv(&key.point)?;
            let a_p = self.act_matrix(&key.point)?;
            let a_pinv = self.act_matrix_inv(&key.point)?;
            let s_alpha =
                ext_antipode(&ExtElement::from_term(key.ext.clone(), Scalar::one()));
            let twisted = ad_extend_ext(&a_pinv, &s_alpha)?;
            for (v1, v2) in word_splits(&key.word) {
                let s_v1 = free_antipode(&FreeElement::from_term(v1, Scalar::one()));
                let word = ad_extend_free(&a_p, &s_v1)?;
                let s_v2 = free_antipode(&FreeElement::from_term(v2, Scalar::one()));
                let odd = free_act_ext(alg, &s_v2, &twisted)?;
                if odd.is_zero() {
                    continue;
                }
                out = out.plus(&self.lift_from_parts(&pinv, &word, &odd)?.scaled(c))?;
            }
        }
        Ok(out)
    }

    /// The quotient map: normalize every word into the ordered basis. It
    /// intertwines all five operations with their current counterparts.
    pub fn phi(&self, x: &TensorLiftElement) -> Result<CurrentElement> {
        self.check_lift(x)?;
        let alg = self.algebra();
        let mut out = self.zero_current();
        for (key, c) in x.terms() {
            let even = crate::enveloping::pbw_normalize(alg, key.word.letters())?;
            let odd = ExtElement::from_term(key.ext.clone(), c.clone());
            out = out.plus(&self.current_from_parts(&key.point, &even, &odd)?)?;
        }
        Ok(out)
    }

    /// The quotient map on the tensor square, leg by leg.
    pub fn phi_square(&self, x: &LiftSquareElement) -> Result<TensorSquareElement> {
        if x.ctx != self.id() {
            return Err(Error::Context("lift square from another context".into()));
        }
        let mut out = self.zero_square();
        for ((a, b), c) in x.terms() {
            let left = self.phi(&TensorLiftElement {
                ctx: self.id(),
                terms: LinExpr::from_term(a.clone(), c.clone()),
            })?;
            let right = self.phi(&TensorLiftElement {
                ctx: self.id(),
                terms: LinExpr::from_term(b.clone(), Scalar::one()),
            })?;
            out = out.plus(&self.outer(&left, &right)?)?;
        }
        Ok(out)
    }

    /// Search the finite family (points × words up to the length bound ×
    /// wedge words) for a term whose double boundary does not vanish.
    /// Returns the first witness with its residue.
    pub fn boundary_square_witness(
        &self,
        points: &[GroupElement],
        max_len: usize,
    ) -> Result<Option<(LiftKey, TensorLiftElement)>> {
        let n = self.dim() as u8;
        let mut words = vec![TensorWord::unit()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &words {
                if w.len() + 1 > max_len {
                    continue;
                }
                for l in 0..n {
                    let mut letters = w.letters().to_vec();
                    letters.push(l);
                    next.push(TensorWord(letters));
                }
            }
            words.extend(next.clone());
            if next.is_empty() {
                break;
            }
        }
        words.sort();
        words.dedup();
        let mut exts = Vec::new();
        for mask in 0u32..(1 << n) {
            let letters: Vec<u8> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            exts.push(ExtMonomial::new(letters)?);
        }
        for p in points {
            for w in &words {
                for x in &exts {
                    let key = LiftKey { point: p.clone(), word: w.clone(), ext: x.clone() };
                    let one = TensorLiftElement {
                        ctx: self.id(),
                        terms: LinExpr::from_term(key.clone(), Scalar::one()),
                    };
                    let dd = self.lift_boundary(&self.lift_boundary(&one)?)?;
                    if !dd.is_zero() {
                        return Ok(Some((key, dd)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Canonical text for lifted elements; free words keep their letter
    /// order, so `e2.e1` and `e1.e2` are distinct terms.
    pub fn show_lift(&self, x: &TensorLiftElement) -> String {
        crate::algebra::show_terms(x.terms().map(|(k, c)| {
            let word = if k.word.is_unit() {
                "1".to_string()
            } else {
                k.word
                    .letters()
                    .iter()
                    .map(|&i| self.algebra().name_of(i).to_string())
                    .collect::<Vec<_>>()
                    .join(".")
            };
            let ext = if k.ext.is_unit() {
                "1".to_string()
            } else {
                k.ext
                    .letters()
                    .iter()
                    .map(|&i| self.algebra().name_of(i).to_string())
                    .collect::<Vec<_>>()
                    .join("^")
            };
            (format!("({} | {} | {})", self.show_group(&k.point), word, ext), c.clone())
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::contexts;
    use crate::groups::unitriangular;

    fn wedge_word(letters: &[u8]) -> ExtMonomial {
        ExtMonomial::new(letters.to_vec()).unwrap()
    }

    fn lift(ctx: &Context, p: &GroupElement, w: &[u8], a: &[u8]) -> TensorLiftElement {
        ctx.lift_term(p.clone(), TensorWord::new(w.to_vec()), wedge_word(a), Scalar::one())
            .unwrap()
    }

    #[test]
    fn free_words_do_not_reorder() {
        let a = FreeElement::from_term(TensorWord::new(vec![1]), Scalar::one());
        let b = FreeElement::from_term(TensorWord::new(vec![0]), Scalar::one());
        let ab = free_mul(&a, &b);
        let ba = free_mul(&b, &a);
        assert_eq!(ab.coeff(&TensorWord::new(vec![1, 0])), Scalar::one());
        assert_ne!(ab, ba);
    }

    #[test]
    fn free_antipode_reverses_with_sign() {
        let x = FreeElement::from_term(TensorWord::new(vec![0, 1, 2]), Scalar::one());
        let s = free_antipode(&x);
        assert_eq!(s.coeff(&TensorWord::new(vec![2, 1, 0])), -Scalar::one());
        assert_eq!(s.num_terms(), 1);
        // An inverse pair: S is an involution on the free algebra.
        assert_eq!(free_antipode(&s), x);
    }

    #[test]
    fn subsequence_splits_keep_order() {
        let w = TensorWord::new(vec![1, 0]);
        let splits = word_splits(&w);
        assert_eq!(splits.len(), 4);
        assert!(splits.contains(&(TensorWord::new(vec![1]), TensorWord::new(vec![0]))));
        assert!(splits.contains(&(TensorWord::new(vec![0]), TensorWord::new(vec![1]))));
        // No split may reorder: the two-letter legs are the original word.
        for (l, r) in &splits {
            if l.len() == 2 {
                assert_eq!(l, &w);
            }
            if r.len() == 2 {
                assert_eq!(r, &w);
            }
        }
    }

    #[test]
    fn double_boundary_witness_on_nonabelian_wedge() {
        // ∂∂(e, 1 ⊗ e1∧e2) = (e, e2.e1 ⊗ 1) - (e, e1.e2 ⊗ 1) + (e, e3 ⊗ 1):
        // the free algebra keeps the two concatenation orders apart and the
        // bracket line adds the third term.
        let ctx = contexts::c2();
        let e = ctx.group().identity();
        let x = lift(&ctx, &e, &[], &[0, 1]);
        let dd = ctx.lift_boundary(&ctx.lift_boundary(&x).unwrap()).unwrap();
        let expect = lift(&ctx, &e, &[1, 0], &[])
            .minus(&lift(&ctx, &e, &[0, 1], &[]))
            .unwrap()
            .plus(&lift(&ctx, &e, &[2], &[]))
            .unwrap();
        assert_eq!(dd, expect, "got {}", ctx.show_lift(&dd));
        // The quotient map kills the residue.
        assert!(ctx.phi(&dd).unwrap().is_zero());
        // The searcher finds some witness in the same family.
        let found = ctx.boundary_square_witness(&[e], 2).unwrap();
        let (key, residue) = found.expect("a witness exists");
        assert!(!residue.is_zero());
        assert!(ctx.phi(&residue).unwrap().is_zero(), "witness residue must die in the quotient");
        assert!(key.grade() >= 2, "a double boundary needs at least two wedge letters");
    }

    #[test]
    fn quotient_intertwines_boundary() {
        let ctx = contexts::c2();
        let p = unitriangular(Scalar::one(), Scalar::from_int(2), Scalar::zero());
        for (w, a) in [
            (vec![1u8, 0u8], vec![0u8, 1u8]),
            (vec![2, 0], vec![0, 1, 2]),
            (vec![], vec![1, 2]),
        ] {
            let x = lift(&ctx, &p, &w, &a);
            let lhs = ctx.phi(&ctx.lift_boundary(&x).unwrap()).unwrap();
            let rhs = ctx.boundary(&ctx.phi(&x).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "boundary does not descend at {}", ctx.show_lift(&x));
        }
    }

    #[test]
    fn quotient_intertwines_convolution_and_antipode() {
        let ctx = contexts::c2();
        let p = unitriangular(Scalar::one(), Scalar::zero(), Scalar::one());
        let q = unitriangular(Scalar::from_int(-1), Scalar::one(), Scalar::zero());
        let x = lift(&ctx, &p, &[1, 0], &[0]);
        let y = lift(&ctx, &q, &[2], &[1]);
        let lhs = ctx.phi(&ctx.lift_convolve(&x, &y).unwrap()).unwrap();
        let rhs = ctx
            .convolve(&ctx.phi(&x).unwrap(), &ctx.phi(&y).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "convolution does not descend");
        let lhs = ctx.phi(&ctx.lift_antipode(&x).unwrap()).unwrap();
        let rhs = ctx.antipode(&ctx.phi(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "antipode does not descend");
    }

    #[test]
    fn quotient_intertwines_coproduct_and_counit() {
        let ctx = contexts::c3();
        let g = GroupElement::Cayley(2);
        let x = lift(&ctx, &g, &[2, 0], &[0, 1]);
        let lhs = ctx.phi_square(&ctx.lift_coproduct(&x).unwrap()).unwrap();
        let rhs = ctx.coproduct(&ctx.phi(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "coproduct does not descend");
        assert_eq!(
            ctx.lift_counit(&x).unwrap(),
            ctx.counit(&ctx.phi(&x).unwrap()).unwrap()
        );
    }

    #[test]
    fn lift_unit_is_neutral() {
        let ctx = contexts::c2();
        let p = unitriangular(Scalar::one(), Scalar::one(), Scalar::one());
        let x = lift(&ctx, &p, &[1, 0, 1], &[0, 2]);
        let u = ctx.unit_lift();
        assert_eq!(ctx.lift_convolve(&u, &x).unwrap(), x);
        assert_eq!(ctx.lift_convolve(&x, &u).unwrap(), x);
    }

    #[test]
    fn abelian_lift_still_fails_double_boundary() {
        // Even with all brackets zero the free slot keeps the two
        // replacement orders distinct, so a witness exists here too.
        let ctx = contexts::c1();
        let e = ctx.group().identity();
        let found = ctx.boundary_square_witness(&[e.clone()], 1).unwrap();
        let (_, residue) = found.expect("free concatenation alone defeats the double boundary");
        assert!(ctx.phi(&residue).unwrap().is_zero());
        let x = lift(&ctx, &e, &[], &[0, 1]);
        let dd = ctx.lift_boundary(&ctx.lift_boundary(&x).unwrap()).unwrap();
        let expect = lift(&ctx, &e, &[1, 0], &[]).minus(&lift(&ctx, &e, &[0, 1], &[])).unwrap();
        assert_eq!(dd, expect);
    }
}
