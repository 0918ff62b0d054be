//! Evaluation of parsed expressions over a loaded context.
//!
//! Values are typed: rationals, currents, tensor squares (what `delta`
//! returns), group-indexed scalars (what `eps` returns), and four-slot
//! elements (what a four-part tuple literal denotes). The `*` operator is
//! resolved by operand type: scaling when one side is a rational, else the
//! product native to the kind (convolution for currents, the Koszul-signed
//! square product for tensor squares, pointwise convolution for counit
//! values, the mixed product for four-slot elements). `*'` is the plain
//! group-ring product and exists only for currents. A rational mixed into
//! a current addition is read as that multiple of the unit current.
//!
//! Type errors name the offending subexpression in the published form.

use hopf_currents::enveloping::uea_mul;
use hopf_currents::exterior::wedge;
use hopf_currents::groups::unitriangular;
use hopf_currents::{
    point_map_convolve, Context, CurrentElement, Error, ExtElement, ExtMonomial, FourSlotElement,
    GroupElement, LieAlgebra, PbwMonomial, PointMap, Result, Scalar, TensorSquareElement,
    UeaElement,
};

use crate::expr::{CallOp, Expr, PointLit};

#[derive(Clone, Debug)]
pub enum Value {
    Num(Scalar),
    Current(CurrentElement),
    Square(TensorSquareElement),
    Map(PointMap),
    Four(FourSlotElement),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Num(_) => "rational",
            Value::Current(_) => "current",
            Value::Square(_) => "tensor square",
            Value::Map(_) => "counit value",
            Value::Four(_) => "four-slot element",
        }
    }

    /// Canonical text form; deterministic for a fixed context.
    pub fn render(&self, ctx: &Context) -> String {
        match self {
            Value::Num(v) => v.to_string(),
            Value::Current(x) => ctx.show_current(x),
            Value::Square(x) => ctx.show_square(x),
            Value::Map(m) => ctx.show_point_map(m),
            Value::Four(x) => ctx.show_fourslot(x),
        }
    }
}

fn type_err(what: impl std::fmt::Display, at: &Expr) -> Error {
    Error::Invalid(format!("{what}, in {at}"))
}

fn scale(c: &Scalar, v: &Value) -> Value {
    match v {
        Value::Num(x) => Value::Num(c * x),
        Value::Current(x) => Value::Current(x.scaled(c)),
        Value::Square(x) => Value::Square(x.scaled(c)),
        Value::Map(x) => Value::Map(x.scaled(c)),
        Value::Four(x) => Value::Four(x.scaled(c)),
    }
}

fn neg(v: &Value) -> Value {
    scale(&Scalar::from_int(-1), v)
}

/// Read a rational as a multiple of the unit current, so that sums may mix
/// the two kinds.
fn widen(ctx: &Context, v: Value) -> Value {
    match v {
        Value::Num(c) => Value::Current(ctx.unit_current().scaled(&c)),
        other => other,
    }
}

fn add(ctx: &Context, a: Value, b: Value, at: &Expr) -> Result<Value> {
    match (a, b) {
        (Value::Num(x), Value::Num(y)) => Ok(Value::Num(&x + &y)),
        (Value::Square(x), Value::Square(y)) => Ok(Value::Square(x.plus(&y)?)),
        (Value::Map(x), Value::Map(y)) => Ok(Value::Map(x.plus(&y))),
        (Value::Four(x), Value::Four(y)) => Ok(Value::Four(x.plus(&y)?)),
        (a @ (Value::Num(_) | Value::Current(_)), b @ (Value::Num(_) | Value::Current(_))) => {
            match (widen(ctx, a), widen(ctx, b)) {
                (Value::Current(x), Value::Current(y)) => Ok(Value::Current(x.plus(&y)?)),
                _ => unreachable!("widen yields currents"),
            }
        }
        (a, b) => Err(type_err(
            format!("cannot add {} and {}", a.kind(), b.kind()),
            at,
        )),
    }
}

fn mul(ctx: &Context, a: Value, b: Value, at: &Expr) -> Result<Value> {
    match (a, b) {
        (Value::Num(x), Value::Num(y)) => Ok(Value::Num(&x * &y)),
        (Value::Num(c), v) => Ok(scale(&c, &v)),
        (v, Value::Num(c)) => Ok(scale(&c, &v)),
        (Value::Current(x), Value::Current(y)) => Ok(Value::Current(ctx.convolve(&x, &y)?)),
        (Value::Square(x), Value::Square(y)) => Ok(Value::Square(ctx.square_convolve(&x, &y)?)),
        (Value::Map(x), Value::Map(y)) => Ok(Value::Map(point_map_convolve(ctx, &x, &y)?)),
        (Value::Four(x), Value::Four(y)) => Ok(Value::Four(ctx.conv_mixed(&x, &y)?)),
        (a, b) => Err(type_err(
            format!("cannot multiply {} and {}", a.kind(), b.kind()),
            at,
        )),
    }
}

fn groupring(ctx: &Context, a: Value, b: Value, at: &Expr) -> Result<Value> {
    match (widen(ctx, a), widen(ctx, b)) {
        (Value::Current(x), Value::Current(y)) => {
            Ok(Value::Current(ctx.groupring_convolve(&x, &y)?))
        }
        (a, b) => Err(type_err(
            format!("*' needs currents, found {} and {}", a.kind(), b.kind()),
            at,
        )),
    }
}

fn resolve_point(ctx: &Context, lit: &PointLit, at: &Expr) -> Result<GroupElement> {
    let elem = match lit {
        PointLit::Identity => ctx.group().identity(),
        PointLit::Cayley(k) => GroupElement::Cayley(*k),
        PointLit::Unitri(a, b, c) => unitriangular(a.clone(), b.clone(), c.clone()),
        PointLit::Perm(images) => GroupElement::Perm(images.clone()),
    };
    ctx.group()
        .contains(&elem)
        .map_err(|e| type_err(e, at))?;
    Ok(elem)
}

fn letter(ctx: &Context, name: &str, at: &Expr) -> Result<u8> {
    ctx.algebra()
        .index_of(name)
        .ok_or_else(|| type_err(format!("unknown basis letter {name}"), at))
}

/// A dotted slot word as an element of the enveloping algebra: the product
/// of its letters, PBW-normalized, over the given coefficient algebra.
fn even_word(ctx: &Context, alg: &LieAlgebra, letters: &[String], at: &Expr) -> Result<UeaElement> {
    let mut acc = UeaElement::one();
    for name in letters {
        let i = letter(ctx, name, at)?;
        let gen = UeaElement::from_term(PbwMonomial::generator(i), Scalar::one());
        acc = uea_mul(alg, &acc, &gen)?;
    }
    Ok(acc)
}

/// A wedge slot word: the ordered wedge of its letters (zero on repeats).
fn odd_word(ctx: &Context, letters: &[String], at: &Expr) -> Result<ExtElement> {
    let mut acc = ExtElement::one();
    for name in letters {
        let i = letter(ctx, name, at)?;
        let gen = ExtElement::from_term(ExtMonomial::generator(i), Scalar::one());
        acc = wedge(&acc, &gen);
    }
    Ok(acc)
}

pub fn evaluate(ctx: &Context, e: &Expr) -> Result<Value> {
    match e {
        Expr::Num(v) => Ok(Value::Num(v.clone())),
        Expr::Neg(inner) => Ok(neg(&evaluate(ctx, inner)?)),
        Expr::Add(a, b) => add(ctx, evaluate(ctx, a)?, evaluate(ctx, b)?, e),
        Expr::Sub(a, b) => {
            let rhs = neg(&evaluate(ctx, b)?);
            add(ctx, evaluate(ctx, a)?, rhs, e)
        }
        Expr::Convolve(a, b) => mul(ctx, evaluate(ctx, a)?, evaluate(ctx, b)?, e),
        Expr::GroupRing(a, b) => groupring(ctx, evaluate(ctx, a)?, evaluate(ctx, b)?, e),
        Expr::Tuple { point, even, odd, right } => {
            let pt = resolve_point(ctx, point, e)?;
            let v = even_word(ctx, ctx.algebra(), even, e)?;
            let a = odd_word(ctx, odd, e)?;
            match right {
                None => Ok(Value::Current(ctx.current_from_parts(&pt, &v, &a)?)),
                Some(right) => {
                    let u = even_word(ctx, ctx.algebra_neg(), right, e)?;
                    Ok(Value::Four(ctx.fourslot_from_parts(&pt, &v, &a, &u)?))
                }
            }
        }
        Expr::Call(op, args) => {
            let first = evaluate(ctx, &args[0])?;
            match op {
                CallOp::Boundary => match first {
                    Value::Current(x) => Ok(Value::Current(ctx.boundary(&x)?)),
                    other => Err(type_err(
                        format!("d expects a current, found {}", other.kind()),
                        e,
                    )),
                },
                CallOp::Antipode => match first {
                    Value::Current(x) => Ok(Value::Current(ctx.antipode(&x)?)),
                    other => Err(type_err(
                        format!("S expects a current, found {}", other.kind()),
                        e,
                    )),
                },
                CallOp::Counit => match first {
                    Value::Current(x) => Ok(Value::Map(ctx.counit(&x)?)),
                    other => Err(type_err(
                        format!("eps expects a current, found {}", other.kind()),
                        e,
                    )),
                },
                CallOp::Coproduct => match first {
                    Value::Current(x) => Ok(Value::Square(ctx.coproduct(&x)?)),
                    other => Err(type_err(
                        format!("delta expects a current, found {}", other.kind()),
                        e,
                    )),
                },
                CallOp::Smash => {
                    let second = evaluate(ctx, &args[1])?;
                    let (Value::Current(h), Value::Current(a)) = (&first, &second) else {
                        return Err(type_err(
                            format!(
                                "smash expects currents, found {} and {}",
                                first.kind(),
                                second.kind()
                            ),
                            e,
                        ));
                    };
                    smash(ctx, h, a, e).map(Value::Current)
                }
            }
        }
    }
}

/// The module-algebra action, extended bilinearly: every term of the first
/// argument must have a unit wedge slot (an "enveloping part at a point"),
/// every term of the second a unit enveloping slot (a "wedge part at a
/// point"); term pairs combine as (p,v) acting on (q,b) at the point pq.
fn smash(ctx: &Context, h: &CurrentElement, a: &CurrentElement, at: &Expr) -> Result<CurrentElement> {
    for k in h.keys() {
        if !k.odd.is_unit() {
            return Err(type_err(
                "the first smash argument must have unit wedge slots",
                at,
            ));
        }
    }
    for k in a.keys() {
        if !k.even.is_unit() {
            return Err(type_err(
                "the second smash argument must have unit enveloping slots",
                at,
            ));
        }
    }
    let mut out = ctx.zero_current();
    for (hk, hc) in h.terms() {
        for (ak, ac) in a.terms() {
            let (pt, lambda) = ctx.smash_action(
                &(hk.point.clone(), UeaElement::from_term(hk.even.clone(), Scalar::one())),
                &(ak.point.clone(), ExtElement::from_term(ak.odd.clone(), Scalar::one())),
            )?;
            let part = ctx.current_from_parts(&pt, &UeaElement::one(), &lambda)?;
            out = out.plus(&part.scaled(&(hc * ac)))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use hopf_currents::contexts;

    fn run(ctx: &Context, src: &str) -> String {
        evaluate(ctx, &parse(src).unwrap()).unwrap().render(ctx)
    }

    #[test]
    fn unit_convolution_is_the_unit() {
        let ctx = contexts::c1();
        assert_eq!(run(&ctx, "(e|1|1) * (e|1|1)"), "(e | 1 | 1)");
    }

    #[test]
    fn counit_kills_positive_degree() {
        let ctx = contexts::c1();
        assert_eq!(run(&ctx, "eps((e | e1 | 1))"), "0");
        assert_eq!(run(&ctx, "eps((g2 | 1 | 1))"), "1 @ g2");
        assert_eq!(
            run(&ctx, "eps((g2 | 1 | 1)) * eps((g3 | 1 | 1))"),
            "1 @ g1"
        );
    }

    #[test]
    fn scalar_arithmetic_and_scaling() {
        let ctx = contexts::c1();
        assert_eq!(run(&ctx, "3/2 * 2"), "3");
        assert_eq!(run(&ctx, "2*(e | e1 | 1) - (e | e1 | 1)"), "(e | e1 | 1)");
        assert_eq!(run(&ctx, "1 + (g1 | 1 | 1)"), "(e | 1 | 1) + (g1 | 1 | 1)");
        assert_eq!(run(&ctx, "-(e | 1 | 1) + (e | 1 | 1)"), "0");
    }

    #[test]
    fn convolution_matches_the_direct_computation() {
        let ctx = contexts::c2();
        let text = run(&ctx, "(M(1,5,0) | e1 | 1) * (M(7,1,0) | 1 | e2)");
        let direct = {
            let p = unitriangular(
                Scalar::from_int(1),
                Scalar::from_int(5),
                Scalar::from_int(0),
            );
            let q = unitriangular(
                Scalar::from_int(7),
                Scalar::from_int(1),
                Scalar::from_int(0),
            );
            let x = ctx
                .current_from_parts(
                    &p,
                    &UeaElement::from_term(PbwMonomial::generator(0), Scalar::one()),
                    &ExtElement::one(),
                )
                .unwrap();
            let y = ctx
                .current_from_parts(
                    &q,
                    &UeaElement::one(),
                    &ExtElement::from_term(ExtMonomial::new(vec![1]).unwrap(), Scalar::one()),
                )
                .unwrap();
            ctx.show_current(&ctx.convolve(&x, &y).unwrap())
        };
        assert_eq!(text, direct);
    }

    #[test]
    fn star_prime_differs_from_star_on_the_witness() {
        let ctx = contexts::c2();
        let star = run(&ctx, "(M(1,5,0) | e1 | 1) * (M(7,1,0) | 1 | e2)");
        let prime = run(&ctx, "(M(1,5,0) | e1 | 1) *' (M(7,1,0) | 1 | e2)");
        assert_ne!(star, prime);
        assert_eq!(prime, "(M(8,6,1) | e1 | e2)");
    }

    #[test]
    fn smash_is_the_bracket_action() {
        let ctx = contexts::c2();
        assert_eq!(run(&ctx, "smash((e | e1 | 1), (e | 1 | e2))"), "(e | 1 | e3)");
        let err = evaluate(&ctx, &parse("smash((e | 1 | e1), (e | 1 | e2))").unwrap())
            .unwrap_err()
            .to_string();
        assert!(err.contains("unit wedge slots"), "{err}");
    }

    #[test]
    fn dotted_words_normalize_through_the_commutation_rule() {
        let ctx = contexts::c2();
        assert_eq!(
            run(&ctx, "(e | e2.e1 | 1)"),
            "(e | e1.e2 | 1) - (e | e3 | 1)"
        );
        assert_eq!(run(&ctx, "(e | 1 | e2^e1)"), "-(e | 1 | e1^e2)");
        assert_eq!(run(&ctx, "(e | 1 | e1^e1)"), "0");
    }

    #[test]
    fn calls_dispatch_to_the_five_operations() {
        let ctx = contexts::c2();
        assert_eq!(
            run(&ctx, "d((e | 1 | e1^e2))"),
            "(e | 1 | e3) + (e | e1 | e2) - (e | e2 | e1)"
        );
        assert_eq!(run(&ctx, "S((e | 1 | e1))"), "-(e | 1 | e1)");
        assert_eq!(
            run(&ctx, "delta((e | e1 | 1))"),
            "[(e | 1 | 1) (x) (e | e1 | 1)] + [(e | e1 | 1) (x) (e | 1 | 1)]"
        );
        assert_eq!(
            run(&ctx, "delta((e | e1 | 1)) * delta((e | 1 | 1))"),
            "[(e | 1 | 1) (x) (e | e1 | 1)] + [(e | e1 | 1) (x) (e | 1 | 1)]"
        );
    }

    #[test]
    fn four_slot_literals_and_their_product() {
        let ctx = contexts::c2();
        assert_eq!(run(&ctx, "(e | e1 | e2 | e3)"), "[e | e1 | e2 | e3]");
        assert_eq!(
            run(&ctx, "(e | 1 | e1 | e3) * (e | e2 | e2 | 1)"),
            "[e | e2 | e1^e2 | e3]"
        );
    }

    #[test]
    fn type_and_context_mismatches_name_the_subexpression() {
        let ctx = contexts::c1();
        let err = evaluate(&ctx, &parse("d(1)").unwrap()).unwrap_err().to_string();
        assert!(err.contains("d expects a current"), "{err}");
        assert!(err.contains("d(1)"), "{err}");
        let err = evaluate(&ctx, &parse("(e|1|1) * delta((e|1|1))").unwrap())
            .unwrap_err()
            .to_string();
        assert!(err.contains("cannot multiply"), "{err}");
        let err = evaluate(&ctx, &parse("(M(1,0,0) | 1 | 1)").unwrap())
            .unwrap_err()
            .to_string();
        assert!(err.contains("in (M(1,0,0) | 1 | 1)"), "{err}");
        let err = evaluate(&ctx, &parse("(e | z9 | 1)").unwrap())
            .unwrap_err()
            .to_string();
        assert!(err.contains("unknown basis letter z9"), "{err}");
    }
}
