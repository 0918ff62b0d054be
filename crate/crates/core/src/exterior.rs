//! Exterior algebra on the odd copy of the base vector space.
//!
//! Monomials are strictly increasing index words e_{i1} ∧ ... ∧ e_{ik}; all
//! signs are merge or shuffle parities. None of the operations here touch the
//! bracket: the exterior factor only sees the underlying vector space.

use crate::error::{Error, Result};
use crate::linalg::SMat;
use crate::linear::LinExpr;
use crate::scalar::Scalar;

/// Strictly increasing wedge word. The unit (grade zero) is the empty word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExtMonomial(Vec<u8>);

impl ExtMonomial {
    pub fn unit() -> Self {
        ExtMonomial(Vec::new())
    }

    pub fn generator(i: u8) -> Self {
        ExtMonomial(vec![i])
    }

    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if !letters.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!(
                "wedge word {letters:?} is not strictly increasing"
            )));
        }
        Ok(ExtMonomial(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn grade(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> Option<u8> {
        self.0.last().copied()
    }
}

/// Element of the exterior algebra.
pub type ExtElement = LinExpr<ExtMonomial>;

impl ExtElement {
    pub fn one() -> Self {
        ExtElement::from_term(ExtMonomial::unit(), Scalar::one())
    }
}

/// Grade-one element from coordinates.
pub fn ext_from_coords(v: &[Scalar]) -> ExtElement {
    let mut out = ExtElement::zero();
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out.add_term(ExtMonomial::generator(i as u8), c.clone());
        }
    }
    out
}

/// Wedge of two monomials: merged word and merge parity, or `None` when a
/// letter repeats. The sign is (-1)^inv where inv counts pairs (a, b) with
/// a from the left word, b from the right word, a > b.
pub fn wedge_mono(a: &ExtMonomial, b: &ExtMonomial) -> Option<(ExtMonomial, bool)> {
    let (x, y) = (a.letters(), b.letters());
    let mut merged = Vec::with_capacity(x.len() + y.len());
    let mut inv = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        if x[i] == y[j] {
            return None;
        }
        if x[i] < y[j] {
            merged.push(x[i]);
            i += 1;
        } else {
            // y[j] jumps over the remaining letters of x.
            inv += x.len() - i;
            merged.push(y[j]);
            j += 1;
        }
    }
    merged.extend_from_slice(&x[i..]);
    merged.extend_from_slice(&y[j..]);
    Some((ExtMonomial(merged), inv % 2 == 1))
}

pub fn wedge(a: &ExtElement, b: &ExtElement) -> ExtElement {
    let mut out = ExtElement::zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            if let Some((m, neg)) = wedge_mono(ma, mb) {
                let c = ca * cb;
                out.add_term(m, if neg { -c } else { c });
            }
        }
    }
    out
}

/// All ways to split a monomial into (left tensor leg, right tensor leg),
/// with the shuffle sign: the parity of the permutation that moves the
/// chosen letters to the front preserving relative order.
pub fn mono_splits(m: &ExtMonomial) -> Vec<(ExtMonomial, ExtMonomial, bool)> {
    let k = m.grade();
    let letters = m.letters();
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u32..(1 << k) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut inv = 0usize;
        for (pos, &l) in letters.iter().enumerate() {
            if mask & (1 << pos) != 0 {
                // Letters already in `right` sit before this one in the
                // original word and after it in the reordering.
                inv += right.len();
                left.push(l);
            } else {
                right.push(l);
            }
        }
        out.push((ExtMonomial(left), ExtMonomial(right), inv % 2 == 1));
    }
    out
}

/// Coproduct: sum of all shuffle splits with signs.
pub fn ext_coproduct(x: &ExtElement) -> Vec<(ExtMonomial, ExtMonomial, Scalar)> {
    let mut acc: LinExpr<(ExtMonomial, ExtMonomial)> = LinExpr::zero();
    for (m, c) in x.terms() {
        for (l, r, neg) in mono_splits(m) {
            acc.add_term((l, r), if neg { -c } else { c.clone() });
        }
    }
    acc.into_terms().map(|((l, r), c)| (l, r, c)).collect()
}

/// Coefficient of the unit monomial.
pub fn ext_counit(x: &ExtElement) -> Scalar {
    x.coeff(&ExtMonomial::unit())
}

/// Antipode: (-1)^g on a grade-g monomial.
///
/// This is negation of each letter combined with word reversal, where the
/// reversal of a sorted grade-g word carries the Koszul factor
/// (-1)^(g(g-1)/2); the product of the two collapses to (-1)^g.  It is the
/// unique map satisfying the antipode identity against [`ext_coproduct`],
/// whose splits carry shuffle signs.
pub fn ext_antipode(x: &ExtElement) -> ExtElement {
    let mut out = ExtElement::zero();
    for (m, c) in x.terms() {
        let sign = Scalar::sign_pow(m.grade());
        out.add_term(m.clone(), &sign * c);
    }
    out
}

/// Extension of a linear map (given in basis coordinates) to the exterior
/// algebra: a wedge word maps to the wedge of the images of its letters.
pub fn ad_extend_ext(a: &SMat, x: &ExtElement) -> Result<ExtElement> {
    let n = a.size();
    let mut out = ExtElement::zero();
    for (m, c) in x.terms() {
        if let Some(top) = m.max_letter() {
            if top as usize >= n {
                return Err(Error::Index(format!(
                    "wedge letter {top} under a {n}x{n} action"
                )));
            }
        }
        let mut acc = ExtElement::from_term(ExtMonomial::unit(), c.clone());
        for &l in m.letters() {
            let img = ext_from_coords(&a.col(l as usize));
            acc = wedge(&acc, &img);
            if acc.is_zero() {
                break;
            }
        }
        out.add_assign(&acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(letters: &[u8]) -> ExtMonomial {
        ExtMonomial::new(letters.to_vec()).unwrap()
    }

    fn gen(i: u8) -> ExtElement {
        ExtElement::from_term(ExtMonomial::generator(i), Scalar::one())
    }

    #[test]
    fn monomial_shape_enforced() {
        assert!(ExtMonomial::new(vec![0, 1, 3]).is_ok());
        assert!(ExtMonomial::new(vec![1, 1]).is_err());
        assert!(ExtMonomial::new(vec![2, 0]).is_err());
        assert_eq!(mono(&[0, 2]).grade(), 2);
        assert!(ExtMonomial::unit().is_unit());
    }

    #[test]
    fn wedge_signs() {
        // e2 ∧ e1 = -(e1 ∧ e2).
        let (m, neg) = wedge_mono(&mono(&[1]), &mono(&[0])).unwrap();
        assert_eq!(m, mono(&[0, 1]));
        assert!(neg);
        // e1 ∧ e1 = 0.
        assert!(wedge_mono(&mono(&[0]), &mono(&[0])).is_none());
        // (e1 ∧ e3) ∧ e2: e2 passes over e3 only.
        let (m, neg) = wedge_mono(&mono(&[0, 2]), &mono(&[1])).unwrap();
        assert_eq!(m, mono(&[0, 1, 2]));
        assert!(neg);
        // Graded commutativity on elements: a∧b = (-1)^(|a||b|) b∧a.
        let a = wedge(&gen(0), &gen(2));
        let b = gen(1);
        let ab = wedge(&a, &b);
        let ba = wedge(&b, &a);
        assert_eq!(ab, ba); // |a| = 2 even
        let ab2 = wedge(&gen(0), &gen(1));
        let ba2 = wedge(&gen(1), &gen(0));
        assert_eq!(ab2, ba2.neg());
    }

    #[test]
    fn coproduct_of_two_letters() {
        // Δ(e1∧e2) = e1∧e2 ⊗ 1 + e1 ⊗ e2 - e2 ⊗ e1 + 1 ⊗ e1∧e2.
        let x = ExtElement::from_term(mono(&[0, 1]), Scalar::one());
        let mut terms = ext_coproduct(&x);
        terms.sort();
        let expect = vec![
            (ExtMonomial::unit(), mono(&[0, 1]), Scalar::one()),
            (mono(&[0]), mono(&[1]), Scalar::one()),
            (mono(&[0, 1]), ExtMonomial::unit(), Scalar::one()),
            (mono(&[1]), mono(&[0]), Scalar::from_int(-1)),
        ];
        assert_eq!(terms, expect);
    }

    #[test]
    fn counit_and_antipode() {
        let mut x = ExtElement::one().scaled(&Scalar::from_int(5));
        x.add_term(mono(&[0, 1]), Scalar::one());
        x.add_term(mono(&[2]), Scalar::from_int(3));
        assert_eq!(ext_counit(&x), Scalar::from_int(5));
        // S alternates with the grade: +1 on even grades, -1 on odd ones.
        let s = ext_antipode(&x);
        assert_eq!(s.coeff(&ExtMonomial::unit()), Scalar::from_int(5));
        assert_eq!(s.coeff(&mono(&[0, 1])), Scalar::one());
        assert_eq!(s.coeff(&mono(&[2])), Scalar::from_int(-3));
        let g3 = ExtElement::from_term(mono(&[0, 1, 2]), Scalar::one());
        assert_eq!(
            ext_antipode(&g3).coeff(&mono(&[0, 1, 2])),
        Scalar::from_int(-1)
        );
    }

    #[test]
    fn antipode_identity_holds_on_every_grade() {
        // Splitting a word, applying S to one half, and wedging the halves
        // back together must collapse to the counit times the unit.  This
        // pins the antipode sign against the signed splits of the coproduct.
        for g in 0..5u8 {
            let m = ExtMonomial::new((0..g).collect()).unwrap();
            let x = ExtElement::from_term(m, Scalar::one());
            let want = ExtElement::one().scaled(&ext_counit(&x));
            let mut left = ExtElement::zero();
            let mut right = ExtElement::zero();
            for (a, b, c) in ext_coproduct(&x) {
                let fst = ExtElement::from_term(a, c);
                let snd = ExtElement::from_term(b, Scalar::one());
                left.add_assign(&wedge(&ext_antipode(&fst), &snd));
                right.add_assign(&wedge(&fst, &ext_antipode(&snd)));
            }
            assert_eq!(left, want, "m(S x id)Delta failed at grade {g}");
            assert_eq!(right, want, "m(id x S)Delta failed at grade {g}");
        }
    }

    #[test]
    fn antipode_is_an_involution_here() {
        // S² = id on every grade since the sign squares away.
        for g in 0..5u8 {
            let m = ExtMonomial::new((0..g).collect()).unwrap();
            let x = ExtElement::from_term(m.clone(), Scalar::from_int(7));
            assert_eq!(ext_antipode(&ext_antipode(&x)), x);
        }
    }

    #[test]
    fn extend_linear_map_to_wedges() {
        // The map e1 -> e1 + e2, e2 -> e2 sends e1∧e2 to e1∧e2.
        let a = SMat::from_rows(vec![
            vec![Scalar::one(), Scalar::zero()],
            vec![Scalar::one(), Scalar::one()],
        ])
        .unwrap();
        let x = ExtElement::from_term(mono(&[0, 1]), Scalar::one());
        let y = ad_extend_ext(&a, &x).unwrap();
        assert_eq!(y, x);
        // Top-grade wedge scales by the determinant.
        let b = SMat::from_rows(vec![
            vec![Scalar::from_int(2), Scalar::one()],
            vec![Scalar::one(), Scalar::from_int(1)],
        ])
        .unwrap();
        let z = ad_extend_ext(&b, &x).unwrap();
        assert_eq!(z.coeff(&mono(&[0, 1])), b.det());
    }
}
