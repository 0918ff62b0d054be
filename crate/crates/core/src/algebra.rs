//! Finite-dimensional Lie algebras over ℚ, given by structure constants.
//!
//! An algebra is a chosen ordered basis e_0, ..., e_{n-1} together with the
//! table [e_i, e_j] = Σ_k c^k_{ij} e_k. The table is stored in full; the
//! constructor antisymmetrizes sparse input. `negated` produces the algebra
//! with every bracket sign flipped, used as the odd-generator counterpart of
//! a given algebra (same underlying vector space, opposite bracket).

use crate::enveloping::{PbwMonomial, UeaElement};
use crate::error::{Error, Result};
use crate::exterior::{ExtElement, ExtMonomial};
use crate::scalar::Scalar;
use crate::validate::ValidationReport;

/// Lie algebra with a fixed ordered basis and rational structure constants.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    dim: usize,
    names: Vec<String>,
    /// table[i][j] = coordinates of [e_i, e_j].
    table: Vec<Vec<Vec<Scalar>>>,
}

impl LieAlgebra {
    /// Build from sparse bracket entries `(i, j, coords)` with `i < j`; the
    /// transposes are filled in with the opposite sign. Duplicate or diagonal
    /// entries are rejected.
    pub fn from_brackets(
        names: Vec<String>,
        entries: &[(usize, usize, Vec<Scalar>)],
    ) -> Result<LieAlgebra> {
        let dim = names.len();
        if dim == 0 || dim > 255 {
            return Err(Error::Dimension(format!("algebra dimension {dim} out of range 1..=255")));
        }
        let mut table = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for (i, j, coords) in entries {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(Error::Index(format!("bracket entry ({i},{j}) in a {dim}-dimensional algebra")));
            }
            if i == j {
                if coords.iter().any(|c| !c.is_zero()) {
                    return Err(Error::Invalid(format!("nonzero bracket [e{i},e{i}]")));
                }
                continue;
            }
            if coords.len() != dim {
                return Err(Error::Dimension(format!(
                    "bracket entry ({i},{j}) has {} coordinates, expected {dim}",
                    coords.len()
                )));
            }
            if table[i][j].iter().any(|c| !c.is_zero()) || table[j][i].iter().any(|c| !c.is_zero()) {
                return Err(Error::Invalid(format!("duplicate bracket entry ({i},{j})")));
            }
            table[i][j] = coords.clone();
            table[j][i] = coords.iter().map(|c| -c).collect();
        }
        Ok(LieAlgebra { dim, names, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_of(&self, i: u8) -> &str {
        &self.names[i as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    /// Coordinates of [e_i, e_j].
    pub fn bracket_basis(&self, i: u8, j: u8) -> &[Scalar] {
        &self.table[i as usize][j as usize]
    }

    /// Bilinear bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::Dimension(format!(
                "bracket of vectors of length {} and {} in dimension {}",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        let mut out = vec![Scalar::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..self.dim {
                    let s = &self.table[i][j][k];
                    if !s.is_zero() {
                        out[k] += &(&c * s);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Same basis, every structure constant negated. The result is again a
    /// Lie algebra (antisymmetry and Jacobi are sign-stable).
    pub fn negated(&self) -> LieAlgebra {
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|c| -c).collect()).collect())
            .collect();
        LieAlgebra { dim: self.dim, names: self.names.clone(), table }
    }

    /// Antisymmetry (including zero diagonal) and the Jacobi identity on all
    /// basis triples.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new("algebra");
        let mut anti_ok = true;
        'anti: for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let sum = &self.table[i][j][k] + &self.table[j][i][k];
                    if !sum.is_zero() {
                        report.fail(
                            "antisymmetry",
                            format!("[e{i},e{j}] + [e{j},e{i}] has coordinate {sum} on e{k}"),
                        );
                        anti_ok = false;
                        break 'anti;
                    }
                }
            }
        }
        if anti_ok {
            report.pass("antisymmetry");
        }

        let mut jac_ok = true;
        'jac: for i in 0..self.dim as u8 {
            for j in 0..self.dim as u8 {
                for k in 0..self.dim as u8 {
                    let a = self.bracket(self.bracket_basis(j, k), &basis_vec(self.dim, i)).unwrap();
                    let b = self.bracket(self.bracket_basis(k, i), &basis_vec(self.dim, j)).unwrap();
                    let c = self.bracket(self.bracket_basis(i, j), &basis_vec(self.dim, k)).unwrap();
                    // [e_i,[e_j,e_k]] = -[[e_j,e_k],e_i], and cyclic.
                    for t in 0..self.dim {
                        let sum = &(&a[t] + &b[t]) + &c[t];
                        if !sum.is_zero() {
                            report.fail(
                                "jacobi",
                                format!("triple (e{i},e{j},e{k}) leaves residue {sum} on e{t}"),
                            );
                            jac_ok = false;
                            break 'jac;
                        }
                    }
                }
            }
        }
        if jac_ok {
            report.pass("jacobi");
        }
        report
    }

    /// Degree-one element of the enveloping algebra from coordinates.
    pub fn vector_to_uea(&self, v: &[Scalar]) -> UeaElement {
        let mut out = UeaElement::zero();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(PbwMonomial::generator(i as u8), c.clone());
            }
        }
        out
    }

    /// Grade-one element of the exterior algebra from coordinates.
    pub fn vector_to_ext(&self, v: &[Scalar]) -> ExtElement {
        let mut out = ExtElement::zero();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(ExtMonomial::generator(i as u8), c.clone());
            }
        }
        out
    }

    /// Canonical text for an enveloping element: monomials sorted, letters
    /// joined with '*', coefficients as `a/b`, e.g. `e1*e2 - e3`.
    pub fn show_uea(&self, v: &UeaElement) -> String {
        show_terms(v.terms().map(|(m, c)| {
            let word = if m.is_unit() {
                "1".to_string()
            } else {
                m.letters().iter().map(|&i| self.name_of(i).to_string()).collect::<Vec<_>>().join("*")
            };
            (word, c.clone())
        }))
    }

    /// Canonical text for an exterior element: letters joined with '^',
    /// grade zero rendered as a bare scalar.
    pub fn show_ext(&self, v: &ExtElement) -> String {
        show_terms(v.terms().map(|(m, c)| {
            let word = if m.is_unit() {
                "1".to_string()
            } else {
                m.letters().iter().map(|&i| self.name_of(i).to_string()).collect::<Vec<_>>().join("^")
            };
            (word, c.clone())
        }))
    }
}

/// Standard basis coordinate vector.
pub fn basis_vec(dim: usize, i: u8) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i as usize] = Scalar::one();
    v
}

/// Shared rendering for sparse linear combinations: `w1 - 2*w2 + 1/2*w3`.
/// The monomial string "1" stands for the unit and absorbs the coefficient.
pub fn show_terms(terms: impl Iterator<Item = (String, Scalar)>) -> String {
    let mut out = String::new();
    for (word, coeff) in terms {
        if coeff.is_zero() {
            continue;
        }
        let neg = coeff.is_negative();
        let mag = coeff.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if word == "1" {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&word);
        } else {
            out.push_str(&format!("{mag}*{word}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Built-in algebras.
pub mod builtin {
    use super::*;

    fn coords(dim: usize, entries: &[(usize, i64)]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dim];
        for (i, c) in entries {
            v[*i] = Scalar::from_int(*c);
        }
        v
    }

    /// ℚ^n with the zero bracket.
    pub fn abelian(n: usize) -> LieAlgebra {
        let names = (1..=n).map(|i| format!("e{i}")).collect();
        LieAlgebra::from_brackets(names, &[]).expect("abelian algebra")
    }

    /// Three-dimensional Heisenberg algebra: [e1,e2] = e3, e3 central.
    pub fn heisenberg() -> LieAlgebra {
        let names = vec!["e1".into(), "e2".into(), "e3".into()];
        LieAlgebra::from_brackets(names, &[(0, 1, coords(3, &[(2, 1)]))]).expect("heisenberg algebra")
    }

    /// sl2 with basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
    pub fn sl2() -> LieAlgebra {
        let names = vec!["h".into(), "e".into(), "f".into()];
        LieAlgebra::from_brackets(
            names,
            &[
                (0, 1, coords(3, &[(1, 2)])),
                (0, 2, coords(3, &[(2, -2)])),
                (1, 2, coords(3, &[(0, 1)])),
            ],
        )
        .expect("sl2 algebra")
    }

    /// so3 with basis (x, y, z): [x,y] = z, [y,z] = x, [z,x] = y.
    pub fn so3() -> LieAlgebra {
        let names = vec!["x".into(), "y".into(), "z".into()];
        LieAlgebra::from_brackets(
            names,
            &[
                (0, 1, coords(3, &[(2, 1)])),
                (1, 2, coords(3, &[(0, 1)])),
                (0, 2, coords(3, &[(1, -1)])),
            ],
        )
        .expect("so3 algebra")
    }
}
