//! Finitely supported currents on a group and their five operations.
//!
//! A current is a finite rational combination of basis keys (p, v, α): a
//! group point p, a PBW monomial v from the enveloping algebra, and a wedge
//! monomial α from the exterior algebra on the negated copy. Ext grade of a
//! key is the wedge length; filtration degree is the PBW word length.
//!
//! Operations, termwise on keys:
//!   boundary    (p, v⊗α) -> Σ_i (-1)^i (p, (A_{p⁻¹}α_i)·v ⊗ α∖α_i)
//!                + Σ_{i<j} (-1)^{i+j+1} (p, v ⊗ [α_i,α_j] ∧ α∖{α_i,α_j})
//!   coproduct   both tensor factors split, shuffle signs from the wedge
//!   counit      group-indexed coefficient of (p, 1⊗1)
//!   convolve    (p,v⊗α)∗(q,w⊗β) = Σ_{(v)} (pq, (A_{q⁻¹}v₍₁₎)·w ⊗ α∧A_p[v₍₂₎,β])
//!   antipode    S(p,v⊗α) = Σ_{(v)} (p⁻¹, A_p S(v₍₁₎) ⊗ [S(v₍₂₎), A_{p⁻¹}S(α)])
//!
//! The brackets inside boundary and the action [v, β] use the base algebra's
//! structure constants. The group-ring-style product (no action, no Sweedler
//! sum) is `groupring_convolve`, kept for contrast with `convolve`.

use std::collections::BTreeSet;

use crate::context::Context;
use crate::enveloping::{
    ad_extend_uea, mono_coproduct, uea_act_ext, uea_antipode, uea_counit, uea_mul, PbwMonomial,
    UeaElement,
};
use crate::error::{Error, Result};
use crate::exterior::{
    ad_extend_ext, ext_antipode, ext_from_coords, mono_splits, wedge, ExtElement, ExtMonomial,
};
use crate::groups::GroupElement;
use crate::linear::LinExpr;
use crate::scalar::Scalar;
use crate::validate::ValidationReport;

/// Basis key of a current: point, even (enveloping) part, odd (wedge) part.
/// Keys order by point, then PBW word, then wedge word, which is the
/// canonical term order everywhere.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CurrentKey {
    pub point: GroupElement,
    pub even: PbwMonomial,
    pub odd: ExtMonomial,
}

impl CurrentKey {
    /// Ext grade: wedge length.
    pub fn grade(&self) -> usize {
        self.odd.grade()
    }

    /// Filtration degree: PBW word length.
    pub fn filtration(&self) -> usize {
        self.even.degree()
    }
}

/// Finite rational combination of current keys, tagged with its context.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurrentElement {
    pub(crate) ctx: u64,
    pub(crate) terms: LinExpr<CurrentKey>,
}

impl CurrentElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.num_terms()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CurrentKey, &Scalar)> {
        self.terms.terms()
    }

    pub fn keys(&self) -> impl Iterator<Item = &CurrentKey> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &CurrentKey) -> Scalar {
        self.terms.coeff(key)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::Context("adding currents from different contexts".into()));
        }
        Ok(CurrentElement { ctx: self.ctx, terms: self.terms.plus(&other.terms) })
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::Context("subtracting currents from different contexts".into()));
        }
        Ok(CurrentElement { ctx: self.ctx, terms: self.terms.minus(&other.terms) })
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        CurrentElement { ctx: self.ctx, terms: self.terms.scaled(c) }
    }

    pub fn neg(&self) -> Self {
        CurrentElement { ctx: self.ctx, terms: self.terms.neg() }
    }

    /// Largest PBW degree present (zero for the zero element).
    pub fn max_filtration(&self) -> usize {
        self.keys().map(|k| k.filtration()).max().unwrap_or(0)
    }

    /// The single ext grade when homogeneous, `None` otherwise.
    pub fn homogeneous_grade(&self) -> Option<usize> {
        let grades: BTreeSet<usize> = self.keys().map(|k| k.grade()).collect();
        match grades.len() {
            0 => Some(0),
            1 => grades.into_iter().next(),
            _ => None,
        }
    }

    /// Group points carrying at least one term.
    pub fn support(&self) -> BTreeSet<&GroupElement> {
        self.keys().map(|k| &k.point).collect()
    }
}

/// Element of the tensor square, for coproduct values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorSquareElement {
    pub(crate) ctx: u64,
    pub(crate) terms: LinExpr<(CurrentKey, CurrentKey)>,
}

impl TensorSquareElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.num_terms()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(CurrentKey, CurrentKey), &Scalar)> {
        self.terms.terms()
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::Context("adding tensors from different contexts".into()));
        }
        Ok(TensorSquareElement { ctx: self.ctx, terms: self.terms.plus(&other.terms) })
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::Context("subtracting tensors from different contexts".into()));
        }
        Ok(TensorSquareElement { ctx: self.ctx, terms: self.terms.minus(&other.terms) })
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        TensorSquareElement { ctx: self.ctx, terms: self.terms.scaled(c) }
    }
}

/// Group-indexed scalars: the value type of the counit.
pub type PointMap = LinExpr<GroupElement>;

/// Sum of all values of a point map.
pub fn point_map_total(m: &PointMap) -> Scalar {
    let mut total = Scalar::zero();
    for (_, c) in m.terms() {
        total += c;
    }
    total
}

/// Convolution of group-indexed scalars: (f∗g)(r) = Σ_{pq=r} f(p)g(q).
pub fn point_map_convolve(ctx: &Context, f: &PointMap, g: &PointMap) -> Result<PointMap> {
    let mut out = PointMap::zero();
    for (p, c) in f.terms() {
        for (q, d) in g.terms() {
            out.add_term(ctx.group().mul(p, q)?, c * d);
        }
    }
    Ok(out)
}

impl Context {
    fn check_key(&self, key: &CurrentKey) -> Result<()> {
        self.group().contains(&key.point)?;
        let dim = self.dim() as u8;
        if let Some(l) = key.even.max_letter() {
            if l >= dim {
                return Err(Error::Index(format!("PBW letter {l} in dimension {dim}")));
            }
        }
        if let Some(l) = key.odd.max_letter() {
            if l >= dim {
                return Err(Error::Index(format!("wedge letter {l} in dimension {dim}")));
            }
        }
        Ok(())
    }

    pub(crate) fn check_current(&self, x: &CurrentElement) -> Result<()> {
        if x.ctx != self.id() {
            return Err(Error::Context(format!(
                "current built in another context used in context {}",
                self.label()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_square(&self, x: &TensorSquareElement) -> Result<()> {
        if x.ctx != self.id() {
            return Err(Error::Context(format!(
                "tensor built in another context used in context {}",
                self.label()
            )));
        }
        Ok(())
    }

    pub fn zero_current(&self) -> CurrentElement {
        CurrentElement { ctx: self.id(), terms: LinExpr::zero() }
    }

    /// The unit of convolution: (e, 1⊗1).
    pub fn unit_current(&self) -> CurrentElement {
        CurrentElement {
            ctx: self.id(),
            terms: LinExpr::from_term(
                CurrentKey {
                    point: self.group().identity(),
                    even: PbwMonomial::unit(),
                    odd: ExtMonomial::unit(),
                },
                Scalar::one(),
            ),
        }
    }

    pub fn current_term(
        &self,
        point: GroupElement,
        even: PbwMonomial,
        odd: ExtMonomial,
        coeff: Scalar,
    ) -> Result<CurrentElement> {
        let key = CurrentKey { point, even, odd };
        self.check_key(&key)?;
        Ok(CurrentElement { ctx: self.id(), terms: LinExpr::from_term(key, coeff) })
    }

    /// (p, v⊗α) expanded termwise over the factors.
    pub fn current_from_parts(
        &self,
        point: &GroupElement,
        even: &UeaElement,
        odd: &ExtElement,
    ) -> Result<CurrentElement> {
        self.group().contains(point)?;
        let mut out = self.zero_current();
        for (m, cv) in even.terms() {
            for (x, cx) in odd.terms() {
                let key = CurrentKey { point: point.clone(), even: m.clone(), odd: x.clone() };
                self.check_key(&key)?;
                out.terms.add_term(key, cv * cx);
            }
        }
        Ok(out)
    }

    pub fn zero_square(&self) -> TensorSquareElement {
        TensorSquareElement { ctx: self.id(), terms: LinExpr::zero() }
    }

    /// x ⊗ y as an element of the tensor square.
    pub fn outer(&self, x: &CurrentElement, y: &CurrentElement) -> Result<TensorSquareElement> {
        self.check_current(x)?;
        self.check_current(y)?;
        let mut out = self.zero_square();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                out.terms.add_term((a.clone(), b.clone()), c * d);
            }
        }
        Ok(out)
    }

    // ---- boundary ----------------------------------------------------

    /// Boundary of a single key; ext grade drops by exactly one, filtration
    /// rises by at most one.
    pub fn boundary_term(&self, key: &CurrentKey) -> Result<CurrentElement> {
        self.check_key(key)?;
        let alg = self.algebra();
        let letters = key.odd.letters();
        let mut out = self.zero_current();
        if letters.is_empty() {
            return Ok(out);
        }
        let a_inv = self.act_matrix_inv(&key.point)?;
        let v_elem = UeaElement::from_term(key.even.clone(), Scalar::one());

        for (i, &li) in letters.iter().enumerate() {
            // (-1)^i (A_{p⁻¹} α_i) · v ⊗ α without α_i.
            let coords = a_inv.col(li as usize);
            let left = uea_mul(alg, &alg.vector_to_uea(&coords), &v_elem)?;
            let rest: Vec<u8> =
                letters.iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &l)| l).collect();
            let rest = ExtElement::from_term(ExtMonomial::new(rest)?, Scalar::sign_pow(i));
            out = out.plus(&self.current_from_parts(&key.point, &left, &rest)?)?;
        }

        for i in 0..letters.len() {
            for j in (i + 1)..letters.len() {
                // (-1)^(i+j+1) v ⊗ [α_i, α_j] ∧ (α without α_i, α_j).
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
                let rest = ExtElement::from_term(ExtMonomial::new(rest)?, Scalar::sign_pow(i + j + 1));
                let front = wedge(&bracket, &rest);
                out = out.plus(&self.current_from_parts(&key.point, &v_elem, &front)?)?;
            }
        }
        Ok(out)
    }

    pub fn boundary(&self, x: &CurrentElement) -> Result<CurrentElement> {
        self.check_current(x)?;
        let mut out = self.zero_current();
        for (key, c) in x.terms() {
            out = out.plus(&self.boundary_term(key)?.scaled(c))?;
        }
        Ok(out)
    }

    // ---- coproduct and counit -----------------------------------------

    /// Coproduct of a single key: both factors split, shuffle signs only
    /// (the enveloping legs are ext grade zero, so no extra Koszul sign).
    pub fn coproduct_term(&self, key: &CurrentKey) -> Result<TensorSquareElement> {
        self.check_key(key)?;
        let mut out = self.zero_square();
        let even_splits = mono_coproduct(&key.even);
        let odd_splits = mono_splits(&key.odd);
        for (v1, v2) in &even_splits {
            for (x1, x2, negated) in &odd_splits {
                let k1 = CurrentKey { point: key.point.clone(), even: v1.clone(), odd: x1.clone() };
                let k2 = CurrentKey { point: key.point.clone(), even: v2.clone(), odd: x2.clone() };
                out.terms.add_term(
                    (k1, k2),
                    if *negated { -Scalar::one() } else { Scalar::one() },
                );
            }
        }
        Ok(out)
    }

    pub fn coproduct(&self, x: &CurrentElement) -> Result<TensorSquareElement> {
        self.check_current(x)?;
        let mut out = self.zero_square();
        for (key, c) in x.terms() {
            out = out.plus(&self.coproduct_term(key)?.scaled(c))?;
        }
        Ok(out)
    }

    /// Counit: the group-indexed coefficient of (·, 1⊗1).
    pub fn counit(&self, x: &CurrentElement) -> Result<PointMap> {
        self.check_current(x)?;
        let mut out = PointMap::zero();
        for (key, c) in x.terms() {
            if key.even.is_unit() && key.odd.is_unit() {
                out.add_term(key.point.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Total counit mass: Σ_p ε(x)(p).
    pub fn counit_total(&self, x: &CurrentElement) -> Result<Scalar> {
        Ok(point_map_total(&self.counit(x)?))
    }

    // ---- convolution ---------------------------------------------------

    /// Convolution of two keys.
    pub fn convolve_terms(&self, a: &CurrentKey, b: &CurrentKey) -> Result<CurrentElement> {
        self.check_key(a)?;
        self.check_key(b)?;
        let alg = self.algebra();
        let pq = self.group().mul(&a.point, &b.point)?;
        let a_p = self.act_matrix(&a.point)?;
        let a_qinv = self.act_matrix_inv(&b.point)?;
        let w_elem = UeaElement::from_term(b.even.clone(), Scalar::one());
        let alpha = ExtElement::from_term(a.odd.clone(), Scalar::one());
        let beta = ExtElement::from_term(b.odd.clone(), Scalar::one());

        let mut out = self.zero_current();
        for (v1, v2) in mono_coproduct(&a.even) {
            let v1_elem = UeaElement::from_term(v1, Scalar::one());
            let v2_elem = UeaElement::from_term(v2, Scalar::one());
            let left = uea_mul(alg, &ad_extend_uea(alg, &a_qinv, &v1_elem)?, &w_elem)?;
            let acted = uea_act_ext(alg, &v2_elem, &beta)?;
            if acted.is_zero() {
                continue;
            }
            let twisted = ad_extend_ext(&a_p, &acted)?;
            let odd = wedge(&alpha, &twisted);
            if odd.is_zero() {
                continue;
            }
            out = out.plus(&self.current_from_parts(&pq, &left, &odd)?)?;
        }
        Ok(out)
    }

    pub fn convolve(&self, x: &CurrentElement, y: &CurrentElement) -> Result<CurrentElement> {
        self.check_current(x)?;
        self.check_current(y)?;
        let mut out = self.zero_current();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                out = out.plus(&self.convolve_terms(a, b)?.scaled(&(c * d)))?;
            }
        }
        Ok(out)
    }

    /// The Koszul-twisted product on the tensor square:
    /// (a⊗b)(c⊗d) = (-1)^(grade(b)·grade(c)) (a∗c)⊗(b∗d), extended
    /// bilinearly. This is the multiplication the coproduct must respect.
    pub fn square_convolve(
        &self,
        s: &TensorSquareElement,
        t: &TensorSquareElement,
    ) -> Result<TensorSquareElement> {
        self.check_square(s)?;
        self.check_square(t)?;
        let mut out = self.zero_square();
        for ((a, b), c) in s.terms() {
            for ((x, y), d) in t.terms() {
                let sign = Scalar::sign_pow(b.grade() * x.grade());
                let left = self.convolve_terms(a, x)?;
                let right = self.convolve_terms(b, y)?;
                let coeff = &(c * d) * &sign;
                for (kl, cl) in left.terms() {
                    for (kr, cr) in right.terms() {
                        out.terms.add_term((kl.clone(), kr.clone()), &(&coeff * cl) * cr);
                    }
                }
            }
        }
        Ok(out)
    }

    // ---- antipode -------------------------------------------------------

    /// Antipode of a single key.
    pub fn antipode_term(&self, key: &CurrentKey) -> Result<CurrentElement> {
        self.check_key(key)?;
        let alg = self.algebra();
        let pinv = self.group().inv(&key.point)?;
        let a_p = self.act_matrix(&key.point)?;
        let a_pinv = self.act_matrix_inv(&key.point)?;
        let s_alpha = ext_antipode(&ExtElement::from_term(key.odd.clone(), Scalar::one()));
        let twisted = ad_extend_ext(&a_pinv, &s_alpha)?;

        let mut out = self.zero_current();
        for (v1, v2) in mono_coproduct(&key.even) {
            let s_v1 = uea_antipode(alg, &UeaElement::from_term(v1, Scalar::one()))?;
            let even = ad_extend_uea(alg, &a_p, &s_v1)?;
            let s_v2 = uea_antipode(alg, &UeaElement::from_term(v2, Scalar::one()))?;
            let odd = uea_act_ext(alg, &s_v2, &twisted)?;
            if odd.is_zero() {
                continue;
            }
            out = out.plus(&self.current_from_parts(&pinv, &even, &odd)?)?;
        }
        Ok(out)
    }

    pub fn antipode(&self, x: &CurrentElement) -> Result<CurrentElement> {
        self.check_current(x)?;
        let mut out = self.zero_current();
        for (key, c) in x.terms() {
            out = out.plus(&self.antipode_term(key)?.scaled(c))?;
        }
        Ok(out)
    }

    // ---- group-ring-style product (no action twist) ----------------------

    /// The product the group ring construction would give: components are
    /// multiplied pointwise with no group action and no Sweedler sum. Kept
    /// alongside `convolve` to exhibit where the two differ.
    pub fn groupring_terms(&self, a: &CurrentKey, b: &CurrentKey) -> Result<CurrentElement> {
        self.check_key(a)?;
        self.check_key(b)?;
        let alg = self.algebra();
        let pq = self.group().mul(&a.point, &b.point)?;
        let even = uea_mul(
            alg,
            &UeaElement::from_term(a.even.clone(), Scalar::one()),
            &UeaElement::from_term(b.even.clone(), Scalar::one()),
        )?;
        let odd = wedge(
            &ExtElement::from_term(a.odd.clone(), Scalar::one()),
            &ExtElement::from_term(b.odd.clone(), Scalar::one()),
        );
        self.current_from_parts(&pq, &even, &odd)
    }

    pub fn groupring_convolve(
        &self,
        x: &CurrentElement,
        y: &CurrentElement,
    ) -> Result<CurrentElement> {
        self.check_current(x)?;
        self.check_current(y)?;
        let mut out = self.zero_current();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                out = out.plus(&self.groupring_terms(a, b)?.scaled(&(c * d)))?;
            }
        }
        Ok(out)
    }

    // ---- smash-product presentation --------------------------------------

    /// Product in the group-twisted enveloping part:
    /// (p, v)(q, w) = (pq, A_{q⁻¹}(v)·w).
    pub fn hpart_mul(
        &self,
        a: &(GroupElement, UeaElement),
        b: &(GroupElement, UeaElement),
    ) -> Result<(GroupElement, UeaElement)> {
        let alg = self.algebra();
        let pq = self.group().mul(&a.0, &b.0)?;
        let twisted = ad_extend_uea(alg, &self.act_matrix_inv(&b.0)?, &a.1)?;
        Ok((pq, uea_mul(alg, &twisted, &b.1)?))
    }

    /// Product in the group-indexed exterior part:
    /// (p, α)(q, β) = (pq, α ∧ A_p β).
    pub fn apart_mul(
        &self,
        a: &(GroupElement, ExtElement),
        b: &(GroupElement, ExtElement),
    ) -> Result<(GroupElement, ExtElement)> {
        let pq = self.group().mul(&a.0, &b.0)?;
        let twisted = ad_extend_ext(&self.act_matrix(&a.0)?, &b.1)?;
        Ok((pq, wedge(&a.1, &twisted)))
    }

    /// Action of the enveloping part on the exterior part:
    /// (p, v) ▷ (q, β) = (pq, A_p [v, β]).
    pub fn smash_action(
        &self,
        h: &(GroupElement, UeaElement),
        a: &(GroupElement, ExtElement),
    ) -> Result<(GroupElement, ExtElement)> {
        let alg = self.algebra();
        let pq = self.group().mul(&h.0, &a.0)?;
        let acted = uea_act_ext(alg, &h.1, &a.1)?;
        Ok((pq, ad_extend_ext(&self.act_matrix(&h.0)?, &acted)?))
    }

    /// The product assembled smash-style: write a term as a#h with a the
    /// exterior part and h the enveloping part at the same point, then
    /// (a#h)(b#k) = Σ a·(h₍₁₎ ▷ b) # h₍₂₎·k, with the exterior wedge taken
    /// fiberwise at the point of the enveloping product. Must agree with
    /// `convolve` (the enveloping coproduct is cocommutative).
    pub fn smash_product(&self, x: &CurrentElement, y: &CurrentElement) -> Result<CurrentElement> {
        self.check_current(x)?;
        self.check_current(y)?;
        let mut out = self.zero_current();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                let alpha = ExtElement::from_term(a.odd.clone(), Scalar::one());
                let w = UeaElement::from_term(b.even.clone(), Scalar::one());
                let beta = ExtElement::from_term(b.odd.clone(), Scalar::one());
                for (v1, v2) in mono_coproduct(&a.even) {
                    let (pt_a, lambda) = self.smash_action(
                        &(a.point.clone(), UeaElement::from_term(v1, Scalar::one())),
                        &(b.point.clone(), beta.clone()),
                    )?;
                    let (pt_h, even) = self.hpart_mul(
                        &(a.point.clone(), UeaElement::from_term(v2, Scalar::one())),
                        &(b.point.clone(), w.clone()),
                    )?;
                    debug_assert_eq!(pt_a, pt_h);
                    let odd = wedge(&alpha, &lambda);
                    out = out
                        .plus(&self.current_from_parts(&pt_h, &even, &odd)?.scaled(&(c * d)))?;
                }
            }
        }
        Ok(out)
    }

    // ---- rendering --------------------------------------------------------

    /// Canonical text: terms in key order, `(point | letters joined with '.'
    /// | letters joined with '^')`, unit slots as `1`, coefficients leading.
    pub fn show_current(&self, x: &CurrentElement) -> String {
        crate::algebra::show_terms(x.terms().map(|(k, c)| (self.show_key(k), c.clone())))
    }

    pub fn show_key(&self, k: &CurrentKey) -> String {
        let even = if k.even.is_unit() {
            "1".to_string()
        } else {
            k.even
                .letters()
                .iter()
                .map(|&i| self.algebra().name_of(i).to_string())
                .collect::<Vec<_>>()
                .join(".")
        };
        let odd = if k.odd.is_unit() {
            "1".to_string()
        } else {
            k.odd
                .letters()
                .iter()
                .map(|&i| self.algebra().name_of(i).to_string())
                .collect::<Vec<_>>()
                .join("^")
        };
        format!("({} | {} | {})", self.show_group(&k.point), even, odd)
    }

    pub fn show_square(&self, x: &TensorSquareElement) -> String {
        crate::algebra::show_terms(
            x.terms()
                .map(|((a, b), c)| (format!("[{} (x) {}]", self.show_key(a), self.show_key(b)), c.clone())),
        )
    }

    pub fn show_point_map(&self, m: &PointMap) -> String {
        let mut parts = Vec::new();
        for (p, c) in m.terms() {
            parts.push(format!("{} @ {}", c, self.show_group(p)));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    // ---- subgroup closure ---------------------------------------------------

    /// Deterministic family of keys supported on the given points: PBW words
    /// up to degree two, wedge words up to grade three.
    pub(crate) fn sample_keys(&self, points: &[GroupElement]) -> Result<Vec<CurrentKey>> {
        let n = self.dim() as u8;
        let mut evens = vec![PbwMonomial::unit()];
        for i in 0..n {
            evens.push(PbwMonomial::generator(i));
            for j in i..n {
                evens.push(PbwMonomial::new(vec![i, j])?);
            }
        }
        let mut odds = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() > 3 {
                continue;
            }
            let letters: Vec<u8> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            odds.push(ExtMonomial::new(letters)?);
        }
        let mut keys = Vec::new();
        for p in points {
            for v in &evens {
                for x in &odds {
                    keys.push(CurrentKey { point: p.clone(), even: v.clone(), odd: x.clone() });
                }
            }
        }
        Ok(keys)
    }

    /// Checks that the sub-objects sitting over the identity point carry the
    /// structure of the bare factors: currents (e, v ⊗ 1) multiply, split,
    /// and invert exactly as the enveloping algebra does, and (e, 1 ⊗ α)
    /// exactly as the exterior algebra does. The boundary vanishes on the
    /// first slice; it is not checked on the second, where it genuinely
    /// leaves the slice.
    pub fn unit_fiber_checks(&self) -> Result<ValidationReport> {
        let mut report = ValidationReport::new("identity-fiber embeddings");
        let alg = self.algebra();
        let e = self.group().identity();
        let n = self.dim() as u8;

        let embed_uea = |v: &UeaElement| self.current_from_parts(&e, v, &ExtElement::one());
        let embed_ext = |a: &ExtElement| self.current_from_parts(&e, &UeaElement::one(), a);

        // Enveloping slice: PBW words of degree two or less.
        let mut uea_words = vec![PbwMonomial::unit()];
        for i in 0..n {
            uea_words.push(PbwMonomial::generator(i));
            for j in i..n {
                uea_words.push(PbwMonomial::new(vec![i, j])?);
            }
        }
        let mut ok_mul = true;
        let mut ok_cop = true;
        let mut ok_counit = true;
        let mut ok_antipode = true;
        let mut ok_boundary = true;
        for a in &uea_words {
            let va = UeaElement::from_term(a.clone(), Scalar::one());
            let xa = embed_uea(&va)?;
            // Antipode, counit, boundary are unary.
            ok_antipode &= self.antipode(&xa)? == embed_uea(&uea_antipode(alg, &va)?)?;
            let eps = self.counit(&xa)?;
            ok_counit &= eps.coeff(&e) == uea_counit(&va) && eps.num_terms() <= 1;
            ok_boundary &= self.boundary(&xa)?.is_zero();
            // Coproduct legs stay in the slice and match the bare coproduct.
            let sq = self.coproduct(&xa)?;
            let mut bare = LinExpr::zero();
            for (m1, m2) in crate::enveloping::mono_coproduct(a) {
                bare.add_term((m1, m2), Scalar::one());
            }
            let mut projected = LinExpr::zero();
            for ((k1, k2), c) in sq.terms() {
                if !k1.odd.is_unit() || !k2.odd.is_unit() {
                    ok_cop = false;
                    continue;
                }
                projected.add_term((k1.even.clone(), k2.even.clone()), c.clone());
            }
            ok_cop &= projected == bare;
            for b in &uea_words {
                let vb = UeaElement::from_term(b.clone(), Scalar::one());
                let prod = self.convolve(&xa, &embed_uea(&vb)?)?;
                ok_mul &= prod == embed_uea(&uea_mul(alg, &va, &vb)?)?;
            }
        }
        report.record("enveloping slice multiplies as the enveloping algebra", ok_mul, String::new());
        report.record("enveloping slice splits as the enveloping algebra", ok_cop, String::new());
        report.record("enveloping slice counit agrees", ok_counit, String::new());
        report.record("enveloping slice antipode agrees", ok_antipode, String::new());
        report.record("boundary vanishes on the enveloping slice", ok_boundary, String::new());

        // Exterior slice: all wedge words.
        let mut ext_words = Vec::new();
        for mask in 0u32..(1 << n) {
            let letters: Vec<u8> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            ext_words.push(ExtMonomial::new(letters)?);
        }
        let mut ok_mul = true;
        let mut ok_cop = true;
        let mut ok_counit = true;
        let mut ok_antipode = true;
        for a in &ext_words {
            let wa = ExtElement::from_term(a.clone(), Scalar::one());
            let xa = embed_ext(&wa)?;
            ok_antipode &= self.antipode(&xa)? == embed_ext(&ext_antipode(&wa))?;
            let eps = self.counit(&xa)?;
            ok_counit &= eps.coeff(&e) == crate::exterior::ext_counit(&wa) && eps.num_terms() <= 1;
            let sq = self.coproduct(&xa)?;
            let mut bare = LinExpr::zero();
            for (m1, m2, c) in crate::exterior::ext_coproduct(&wa) {
                bare.add_term((m1, m2), c);
            }
            let mut projected = LinExpr::zero();
            for ((k1, k2), c) in sq.terms() {
                if !k1.even.is_unit() || !k2.even.is_unit() {
                    ok_cop = false;
                    continue;
                }
                projected.add_term((k1.odd.clone(), k2.odd.clone()), c.clone());
            }
            ok_cop &= projected == bare;
            for b in &ext_words {
                let wb = ExtElement::from_term(b.clone(), Scalar::one());
                let prod = self.convolve(&xa, &embed_ext(&wb)?)?;
                ok_mul &= prod == embed_ext(&wedge(&wa, &wb))?;
            }
        }
        report.record("exterior slice multiplies as the exterior algebra", ok_mul, String::new());
        report.record("exterior slice splits as the exterior algebra", ok_cop, String::new());
        report.record("exterior slice counit agrees", ok_counit, String::new());
        report.record("exterior slice antipode agrees", ok_antipode, String::new());
        Ok(report)
    }

    /// Checks that the span of currents supported on a validated subgroup is
    /// closed under the selected operations: every output term must sit on a
    /// subgroup point (both legs, for the coproduct).
    pub fn is_subalgebra_closed(
        &self,
        subgroup: &[GroupElement],
        ops: &[HopfOp],
    ) -> Result<ValidationReport> {
        self.group().validate_subgroup(subgroup)?;
        let mut report = ValidationReport::new("subgroup closure");
        let keys = self.sample_keys(subgroup)?;
        let inside = |p: &GroupElement| subgroup.contains(p);

        for op in ops {
            match op {
                HopfOp::Boundary => {
                    let bad = keys.iter().find_map(|k| {
                        let out = self.boundary_term(k).ok()?;
                        let escaped = out.keys().find(|t| !inside(&t.point)).cloned();
                        escaped.map(|t| (k.clone(), t))
                    });
                    report.record(
                        "boundary stays on the subgroup",
                        bad.is_none(),
                        bad.map(|(k, t)| format!("{} escapes to {}", self.show_key(&k), self.show_key(&t)))
                            .unwrap_or_default(),
                    );
                }
                HopfOp::Coproduct => {
                    let bad = keys.iter().find_map(|k| {
                        let out = self.coproduct_term(k).ok()?;
                        let escaped = out
                            .terms
                            .keys()
                            .any(|(a, b)| !inside(&a.point) || !inside(&b.point));
                        escaped.then(|| k.clone())
                    });
                    report.record(
                        "coproduct stays on the subgroup",
                        bad.is_none(),
                        bad.map(|k| format!("{} has a leg off the subgroup", self.show_key(&k)))
                            .unwrap_or_default(),
                    );
                }
                HopfOp::Counit => {
                    // The counit of a subgroup-supported current is supported
                    // on the subgroup by construction; check anyway.
                    let bad = keys.iter().find(|k| !inside(&k.point));
                    report.record(
                        "counit stays on the subgroup",
                        bad.is_none(),
                        String::new(),
                    );
                }
                HopfOp::Convolve => {
                    let cap = keys.len().min(60);
                    let mut bad = None;
                    'outer: for a in keys.iter().take(cap) {
                        for b in keys.iter().take(cap) {
                            let out = self.convolve_terms(a, b)?;
                            let escaped = out.keys().find(|t| !inside(&t.point)).cloned();
                            if let Some(t) = escaped {
                                bad = Some((a.clone(), b.clone(), t));
                                break 'outer;
                            }
                        }
                    }
                    report.record(
                        "convolution stays on the subgroup",
                        bad.is_none(),
                        bad.map(|(a, b, t)| {
                            format!(
                                "{} * {} escapes to {}",
                                self.show_key(&a),
                                self.show_key(&b),
                                self.show_key(&t)
                            )
                        })
                        .unwrap_or_default(),
                    );
                }
                HopfOp::Antipode => {
                    let bad = keys.iter().find_map(|k| {
                        let out = self.antipode_term(k).ok()?;
                        let escaped = out.keys().find(|t| !inside(&t.point)).cloned();
                        escaped.map(|t| (k.clone(), t))
                    });
                    report.record(
                        "antipode stays on the subgroup",
                        bad.is_none(),
                        bad.map(|(k, t)| format!("{} escapes to {}", self.show_key(&k), self.show_key(&t)))
                            .unwrap_or_default(),
                    );
                }
            }
        }
        Ok(report)
    }
}

/// The operations a subgroup-closure check can select.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HopfOp {
    Boundary,
    Coproduct,
    Counit,
    Convolve,
    Antipode,
}

impl HopfOp {
    pub fn all() -> &'static [HopfOp] {
        &[HopfOp::Boundary, HopfOp::Coproduct, HopfOp::Counit, HopfOp::Convolve, HopfOp::Antipode]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::contexts;
    use crate::groups::unitriangular;

    fn word(letters: &[u8]) -> PbwMonomial {
        PbwMonomial::new(letters.to_vec()).unwrap()
    }

    fn wedge_word(letters: &[u8]) -> ExtMonomial {
        ExtMonomial::new(letters.to_vec()).unwrap()
    }

    /// (p, v ⊗ α) with unit coefficient from raw words.
    fn term(
        ctx: &Context,
        p: &GroupElement,
        v: &[u8],
        a: &[u8],
    ) -> CurrentElement {
        ctx.current_term(p.clone(), word(v), wedge_word(a), Scalar::one()).unwrap()
    }

    #[test]
    fn unit_is_two_sided() {
        for ctx in contexts::all() {
            let e = ctx.group().identity();
            let x = term(&ctx, &e, &[0, 1], &[0]);
            let u = ctx.unit_current();
            assert_eq!(ctx.convolve(&u, &x).unwrap(), x);
            assert_eq!(ctx.convolve(&x, &u).unwrap(), x);
        }
    }

    #[test]
    fn heisenberg_convolution_oracle() {
        // (p, e1⊗1) ∗ (q, 1⊗e2)
        //   = (pq, (e1 + b_q e3) ⊗ (e2 + a_p e3) + 1 ⊗ e3)
        // with p = M(a_p, b_p, c_p), q = M(a_q, b_q, c_q).
        let ctx = contexts::c2();
        let p = unitriangular(Scalar::from_int(1), Scalar::from_int(5), Scalar::zero());
        let q = unitriangular(Scalar::from_int(7), Scalar::from_int(1), Scalar::zero());
        let x = term(&ctx, &p, &[0], &[]);
        let y = term(&ctx, &q, &[], &[1]);
        let got = ctx.convolve(&x, &y).unwrap();

        let pq = ctx.group().mul(&p, &q).unwrap();
        let mut even = UeaElement::from_term(word(&[0]), Scalar::one());
        even.add_term(word(&[2]), Scalar::one()); // b_q = 1
        let mut odd = ExtElement::from_term(wedge_word(&[1]), Scalar::one());
        odd.add_term(wedge_word(&[2]), Scalar::one()); // a_p = 1
        let mut expect = ctx.current_from_parts(&pq, &even, &odd).unwrap();
        expect = expect
            .plus(&term(&ctx, &pq, &[], &[2]))
            .unwrap();
        assert_eq!(got, expect, "got {}", ctx.show_current(&got));
    }

    #[test]
    fn heisenberg_boundary_oracle() {
        // ∂(p, 1 ⊗ e1∧e2) = (p, (e1 + b e3) ⊗ e2 - (e2 - a e3) ⊗ e1 + 1 ⊗ e3)
        // at p = M(a, b, c).
        let ctx = contexts::c2();
        let p = unitriangular(Scalar::from_int(2), Scalar::from_int(3), Scalar::from_int(1));
        let x = term(&ctx, &p, &[], &[0, 1]);
        let got = ctx.boundary(&x).unwrap();

        let mut expect = ctx.zero_current();
        for (v, a, c) in [
            (vec![0u8], vec![1u8], 1i64),  // e1 ⊗ e2
            (vec![2], vec![1], 3),         // b e3 ⊗ e2
            (vec![1], vec![0], -1),        // -e2 ⊗ e1
            (vec![2], vec![0], 2),         // a e3 ⊗ e1
            (vec![], vec![2], 1),          // 1 ⊗ e3
        ] {
            expect = expect
                .plus(
                    &ctx.current_term(p.clone(), word(&v), wedge_word(&a), Scalar::from_int(c))
                        .unwrap(),
                )
                .unwrap();
        }
        assert_eq!(got, expect, "got {}", ctx.show_current(&got));
    }

    #[test]
    fn boundary_squares_to_zero_on_oracles() {
        let ctx = contexts::c2();
        let p = unitriangular(Scalar::from_int(2), Scalar::from_int(-1), Scalar::ratio(1, 2));
        for (v, a) in [
            (vec![], vec![0u8, 1u8]),
            (vec![0u8], vec![0, 1, 2]),
            (vec![0, 1], vec![1, 2]),
        ] {
            let x = term(&ctx, &p, &v, &a);
            let dd = ctx.boundary(&ctx.boundary(&x).unwrap()).unwrap();
            assert!(dd.is_zero(), "residue {}", ctx.show_current(&dd));
        }
        // Non-trivial algebra with a non-trivial finite action.
        let c3 = contexts::c3();
        let g = GroupElement::Cayley(3);
        let x = term(&c3, &g, &[0, 2], &[0, 1, 2]);
        let dd = c3.boundary(&c3.boundary(&x).unwrap()).unwrap();
        assert!(dd.is_zero(), "residue {}", c3.show_current(&dd));
    }

    #[test]
    fn coproduct_of_mixed_term() {
        // Δ(p, e1 ⊗ e2) has four summands, all positive.
        let ctx = contexts::c2();
        let p = unitriangular(Scalar::one(), Scalar::zero(), Scalar::zero());
        let x = term(&ctx, &p, &[0], &[1]);
        let sq = ctx.coproduct(&x).unwrap();
        assert_eq!(sq.num_terms(), 4);
        for (_, c) in sq.terms() {
            assert_eq!(*c, Scalar::one());
        }
        let unit_u = PbwMonomial::unit();
        let unit_x = ExtMonomial::unit();
        let k = |v: &[u8], a: &[u8]| CurrentKey { point: p.clone(), even: word(v), odd: wedge_word(a) };
        assert_eq!(sq.terms.coeff(&(k(&[0], &[1]), k(&[], &[]))), Scalar::one());
        assert_eq!(sq.terms.coeff(&(k(&[0], &[]), k(&[], &[1]))), Scalar::one());
        assert_eq!(sq.terms.coeff(&(k(&[], &[1]), k(&[0], &[]))), Scalar::one());
        assert_eq!(
            sq.terms.coeff(&(
                CurrentKey { point: p.clone(), even: unit_u, odd: unit_x },
                k(&[0], &[1])
            )),
            Scalar::one()
        );
    }

    #[test]
    fn counit_collapses_coproduct() {
        let ctx = contexts::c3();
        let g = GroupElement::Cayley(4);
        let x = term(&ctx, &g, &[1, 2], &[0, 2])
            .plus(&term(&ctx, &g, &[], &[]).scaled(&Scalar::from_int(3)))
            .unwrap();
        // ε is 3 at g and misses the non-unit term.
        let eps = ctx.counit(&x).unwrap();
        assert_eq!(eps.coeff(&g), Scalar::from_int(3));
        assert_eq!(ctx.counit_total(&x).unwrap(), Scalar::from_int(3));
        // (ε ⊗ id)Δ = id.
        let sq = ctx.coproduct(&x).unwrap();
        let mut collapsed = ctx.zero_current();
        for ((a, b), c) in sq.terms() {
            if a.even.is_unit() && a.odd.is_unit() {
                collapsed = collapsed
                    .plus(&ctx.current_term(b.point.clone(), b.even.clone(), b.odd.clone(), c.clone()).unwrap())
                    .unwrap();
            }
        }
        assert_eq!(collapsed, x);
    }

    #[test]
    fn antipode_law_on_samples() {
        for ctx in contexts::all() {
            let points: Vec<GroupElement> = match ctx.group().elements() {
                Some(all) => all.into_iter().take(3).collect(),
                None => vec![
                    ctx.group().identity(),
                    unitriangular(Scalar::one(), Scalar::from_int(-1), Scalar::ratio(1, 2)),
                ],
            };
            for p in &points {
                let x = term(&ctx, p, &[0, 1], &[0])
                    .plus(&term(&ctx, p, &[], &[1]).scaled(&Scalar::from_int(-2)))
                    .unwrap();
                let sq = ctx.coproduct(&x).unwrap();
                let mut left = ctx.zero_current();
                let mut right = ctx.zero_current();
                for ((a, b), c) in sq.terms() {
                    let sa = ctx.antipode_term(a).unwrap();
                    let tb = ctx
                        .current_term(b.point.clone(), b.even.clone(), b.odd.clone(), Scalar::one())
                        .unwrap();
                    left = left.plus(&ctx.convolve(&sa, &tb).unwrap().scaled(c)).unwrap();
                    let ta = ctx
                        .current_term(a.point.clone(), a.even.clone(), a.odd.clone(), Scalar::one())
                        .unwrap();
                    let sb = ctx.antipode_term(b).unwrap();
                    right = right.plus(&ctx.convolve(&ta, &sb).unwrap().scaled(c)).unwrap();
                }
                let expect = ctx.unit_current().scaled(&ctx.counit_total(&x).unwrap());
                assert_eq!(left, expect, "left antipode law at {}", ctx.show_group(p));
                assert_eq!(right, expect, "right antipode law at {}", ctx.show_group(p));
            }
        }
    }

    #[test]
    fn convolution_against_groupring() {
        // Nonabelian algebra: the two products differ by the bracket term.
        let ctx = contexts::c2();
        let e = ctx.group().identity();
        let x = term(&ctx, &e, &[0], &[]);
        let y = term(&ctx, &e, &[], &[1]);
        let conv = ctx.convolve(&x, &y).unwrap();
        let ring = ctx.groupring_convolve(&x, &y).unwrap();
        let diff = conv.minus(&ring).unwrap();
        assert_eq!(diff, term(&ctx, &e, &[], &[2]));
        // Abelian algebra, trivial action: they agree.
        let c1 = contexts::c1();
        let g = GroupElement::Cayley(3);
        let x = term(&c1, &g, &[0, 1], &[2]);
        let y = term(&c1, &GroupElement::Cayley(2), &[1], &[0, 1]);
        assert_eq!(c1.convolve(&x, &y).unwrap(), c1.groupring_convolve(&x, &y).unwrap());
    }

    #[test]
    fn smash_assembly_matches_convolution() {
        let ctx = contexts::c2();
        let p = unitriangular(Scalar::one(), Scalar::zero(), Scalar::zero());
        let q = unitriangular(Scalar::zero(), Scalar::from_int(2), Scalar::one());
        let x = term(&ctx, &p, &[0, 1], &[0]);
        let y = term(&ctx, &q, &[1], &[1, 2]);
        assert_eq!(ctx.smash_product(&x, &y).unwrap(), ctx.convolve(&x, &y).unwrap());
        let c3 = contexts::c3();
        let a = term(&c3, &GroupElement::Cayley(1), &[0, 0], &[1]);
        let b = term(&c3, &GroupElement::Cayley(5), &[2], &[0, 2]);
        assert_eq!(c3.smash_product(&a, &b).unwrap(), c3.convolve(&a, &b).unwrap());
    }

    #[test]
    fn subgroup_closure_and_rejection() {
        let ctx = contexts::c1();
        let even = vec![GroupElement::Cayley(0), GroupElement::Cayley(2)];
        let report = ctx.is_subalgebra_closed(&even, HopfOp::all()).unwrap();
        assert!(report.passed(), "{report}");
        let broken = vec![GroupElement::Cayley(0), GroupElement::Cayley(1)];
        assert!(ctx.is_subalgebra_closed(&broken, HopfOp::all()).is_err());
    }

    #[test]
    fn rendering_round_trip_forms() {
        let ctx = contexts::c2();
        let e = ctx.group().identity();
        let m = unitriangular(Scalar::one(), Scalar::ratio(-1, 2), Scalar::zero());
        let x = term(&ctx, &e, &[0, 1], &[1, 2])
            .plus(&term(&ctx, &m, &[], &[]).scaled(&Scalar::ratio(-3, 2)))
            .unwrap();
        assert_eq!(
            ctx.show_current(&x),
            "(e | e1.e2 | e2^e3) - 3/2*(M(1,-1/2,0) | 1 | 1)"
        );
        assert_eq!(ctx.show_current(&ctx.zero_current()), "0");
        assert_eq!(ctx.show_current(&ctx.unit_current()), "(e | 1 | 1)");
    }

    #[test]
    fn identity_fiber_embeds_both_factors() {
        for ctx in [contexts::c1(), contexts::c2()] {
            let report = ctx.unit_fiber_checks().unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn cross_context_elements_are_rejected() {
        let a = contexts::c1();
        let b = contexts::c1();
        let x = a.unit_current();
        assert!(b.convolve(&x, &x).is_err());
        assert!(b.boundary(&x).is_err());
        let y = b.unit_current();
        assert!(x.plus(&y).is_err());
    }
}
