//! Randomized law suites over a context.
//!
//! Each suite draws small random elements from a seeded generator and checks
//! a family of identities exactly; any violation is reported with the
//! offending inputs rendered in canonical text. Reports are plain data and
//! serialize to JSON deterministically: given the same seed, context, and
//! case count, two runs produce byte-identical output.
//!
//! The seven suites:
//!   hopf-axioms          unit, associativity, counit laws, coassociativity,
//!                        the bialgebra compatibility with its Koszul sign,
//!                        both antipode identities, multiplicativity of the
//!                        counit under point convolution
//!   differential         the boundary squares to zero, the graded Leibniz
//!                        rule, the boundary-antipode commutation, the
//!                        co-Leibniz rule, counit kills boundaries
//!   bimodule-derivation  the four-slot chain reproduces convolution; slot
//!                        rewriting never changes the reduced current
//!   smash-equivalence    the smash-style assembly equals convolution; the
//!                        action measures wedges and is group-equivariant
//!   groupring-contrast   locates where convolution departs from the plain
//!                        group-ring product, or proves they agree here
//!   tensor-lift          the quotient map intertwines all five operations;
//!                        the lift satisfies every Hopf law in its own right
//!                        while its boundary fails to square to zero, and
//!                        the residue dies in the quotient
//!   subalgebra-closure   currents over a proper subgroup stay closed under
//!                        all five operations; the identity-fiber slices
//!                        reproduce both factor Hopf algebras
//!
//! Every randomized suite also asserts grade and filtration bookkeeping on
//! the currents it samples: each case carries a bookkeeping check alongside
//! the laws above.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::context::Context;
use crate::currents::{point_map_convolve, point_map_total, CurrentElement, CurrentKey, HopfOp};
use crate::enveloping::{mono_coproduct, uea_act_ext, PbwMonomial, UeaElement};
use crate::error::{Error, Result};
use crate::exterior::{ext_from_coords, wedge, ExtElement, ExtMonomial};
use crate::groups::GroupElement;
use crate::linear::LinExpr;
use crate::scalar::Scalar;
use crate::tensor_lift::{LiftKey, TensorLiftElement, TensorWord};

/// Names of the suites, in canonical order.
pub const SUITES: [&str; 7] = [
    "hopf-axioms",
    "differential",
    "bimodule-derivation",
    "smash-equivalence",
    "groupring-contrast",
    "tensor-lift",
    "subalgebra-closure",
];

/// Master seed and case count for a run.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, cases: 100 }
    }
}

/// One violated identity with its inputs in canonical text.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Failure {
    pub law: String,
    pub inputs: Vec<String>,
    pub detail: String,
}

/// Outcome of one suite on one context.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub context: String,
    pub seed: u64,
    pub cases: u32,
    pub checks: u64,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub wall_ms: u128,
}

const FAILURE_CAP: usize = 12;

impl SuiteReport {
    fn new(suite: &str, context: &str, seed: u64, cases: u32) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            context: context.to_string(),
            seed,
            cases,
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            wall_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, law: &str, ok: bool, inputs: Vec<String>, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if ok {
            return;
        }
        if self.failures.len() == FAILURE_CAP {
            self.notes.push("further failures suppressed".to_string());
        }
        if self.failures.len() <= FAILURE_CAP {
            self.failures.push(Failure { law: law.to_string(), inputs, detail: detail() });
        }
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

/// Stable seed for a (master, suite, context) triple.
pub fn derive_seed(master: u64, suite: &str, context: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325 ^ master.rotate_left(17);
    for b in suite.bytes().chain(std::iter::once(0xfe)).chain(context.bytes()) {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn rng_for(master: u64, suite: &str, context: &str) -> (u64, ChaCha8Rng) {
    let seed = derive_seed(master, suite, context);
    (seed, ChaCha8Rng::seed_from_u64(seed))
}

// ---- random element generation ---------------------------------------------

fn pick(rng: &mut ChaCha8Rng, n: usize) -> usize {
    (rng.next_u64() % n.max(1) as u64) as usize
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    match pick(rng, 5) {
        0 => Scalar::one(),
        1 => -Scalar::one(),
        2 => Scalar::from_int(2),
        3 => Scalar::from_int(-2),
        _ => Scalar::ratio(1, 2),
    }
}

fn random_point(ctx: &Context, rng: &mut ChaCha8Rng) -> GroupElement {
    match ctx.group().elements() {
        Some(all) => all[pick(rng, all.len())].clone(),
        None => {
            let pool = ctx.default_samples();
            let mut p = pool[pick(rng, pool.len())].clone();
            if rng.next_u64() & 1 == 0 {
                let q = &pool[pick(rng, pool.len())];
                p = ctx.group().mul(&p, q).expect("sample points multiply");
            }
            p
        }
    }
}

fn random_pbw(ctx: &Context, rng: &mut ChaCha8Rng, max_deg: usize) -> PbwMonomial {
    let dim = ctx.dim() as u8;
    let len = pick(rng, max_deg + 1);
    let mut letters: Vec<u8> = (0..len).map(|_| pick(rng, dim as usize) as u8).collect();
    letters.sort_unstable();
    PbwMonomial::new(letters).expect("sorted letters form a monomial")
}

fn random_ext(ctx: &Context, rng: &mut ChaCha8Rng, max_grade: usize) -> ExtMonomial {
    let dim = ctx.dim() as usize;
    let mut mask = (rng.next_u64() as usize) & ((1 << dim) - 1);
    while mask.count_ones() as usize > max_grade {
        let top = usize::BITS - 1 - mask.leading_zeros();
        mask &= !(1 << top);
    }
    let letters: Vec<u8> = (0..dim as u8).filter(|&i| mask & (1 << i) != 0).collect();
    ExtMonomial::new(letters).expect("increasing letters form a wedge")
}

/// Term count, PBW degree, and ext grade limits for one random element.
#[derive(Clone, Copy)]
struct Budget {
    terms: usize,
    deg: usize,
    grade: usize,
}

const BIG: Budget = Budget { terms: 3, deg: 3, grade: 3 };
const SMALL: Budget = Budget { terms: 2, deg: 2, grade: 2 };

fn random_current(ctx: &Context, rng: &mut ChaCha8Rng, b: Budget) -> CurrentElement {
    let mut out = ctx.zero_current();
    let n = 1 + pick(rng, b.terms);
    for _ in 0..n {
        let term = ctx
            .current_term(
                random_point(ctx, rng),
                random_pbw(ctx, rng, b.deg),
                random_ext(ctx, rng, b.grade),
                random_scalar(rng),
            )
            .expect("sampled keys are valid");
        out = out.plus(&term).expect("same context");
    }
    out
}

/// Random current whose every term has the same ext grade.
fn random_homogeneous(ctx: &Context, rng: &mut ChaCha8Rng, grade: usize, b: Budget) -> CurrentElement {
    let dim = ctx.dim() as usize;
    let grade = grade.min(dim);
    let mut out = ctx.zero_current();
    let n = 1 + pick(rng, b.terms);
    for _ in 0..n {
        let mut letters: Vec<u8> = (0..dim as u8).collect();
        while letters.len() > grade {
            letters.remove(pick(rng, letters.len()));
        }
        let term = ctx
            .current_term(
                random_point(ctx, rng),
                random_pbw(ctx, rng, b.deg),
                ExtMonomial::new(letters).expect("increasing"),
                random_scalar(rng),
            )
            .expect("sampled keys are valid");
        out = out.plus(&term).expect("same context");
    }
    out
}

fn random_lift(ctx: &Context, rng: &mut ChaCha8Rng, b: Budget) -> TensorLiftElement {
    let dim = ctx.dim() as usize;
    let mut out = ctx.zero_lift();
    let n = 1 + pick(rng, b.terms);
    for _ in 0..n {
        let len = pick(rng, b.deg + 1);
        let letters: Vec<u8> = (0..len).map(|_| pick(rng, dim) as u8).collect();
        let term = ctx
            .lift_term(
                random_point(ctx, rng),
                TensorWord::new(letters),
                random_ext(ctx, rng, b.grade),
                random_scalar(rng),
            )
            .expect("sampled keys are valid");
        out = out.plus(&term).expect("same context");
    }
    out
}

// ---- bookkeeping -------------------------------------------------------------

/// Grade and filtration discipline of the unary operations, checked key by
/// key: the boundary drops the grade by exactly one and raises the
/// filtration by at most one; the antipode preserves the grade and never
/// raises the filtration; the coproduct splits both quantities exactly.
pub fn bookkeeping_problems(ctx: &Context, x: &CurrentElement) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    for key in x.keys() {
        let g = key.grade();
        let f = key.filtration();
        for t in ctx.boundary_term(key)?.keys() {
            if t.grade() + 1 != g {
                problems.push(format!(
                    "boundary of {} reaches grade {} from grade {}",
                    ctx.show_key(key),
                    t.grade(),
                    g
                ));
            }
            if t.filtration() > f + 1 {
                problems.push(format!(
                    "boundary of {} raises filtration {} above {}",
                    ctx.show_key(key),
                    t.filtration(),
                    f + 1
                ));
            }
        }
        for t in ctx.antipode_term(key)?.keys() {
            if t.grade() != g {
                problems.push(format!(
                    "antipode of {} changes grade {} to {}",
                    ctx.show_key(key),
                    g,
                    t.grade()
                ));
            }
            if t.filtration() > f {
                problems.push(format!(
                    "antipode of {} raises filtration {} above {}",
                    ctx.show_key(key),
                    t.filtration(),
                    f
                ));
            }
        }
        for (a, b) in ctx.coproduct_term(key)?.terms.keys() {
            if a.grade() + b.grade() != g {
                problems.push(format!(
                    "coproduct of {} splits grade {} as {}+{}",
                    ctx.show_key(key),
                    g,
                    a.grade(),
                    b.grade()
                ));
            }
            if a.filtration() + b.filtration() != f {
                problems.push(format!(
                    "coproduct of {} splits filtration {} as {}+{}",
                    ctx.show_key(key),
                    f,
                    a.filtration(),
                    b.filtration()
                ));
            }
        }
    }
    Ok(problems)
}

/// Grade and filtration discipline of both products: grades add exactly,
/// filtrations add at most.
pub fn bookkeeping_pair_problems(
    ctx: &Context,
    x: &CurrentElement,
    y: &CurrentElement,
) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    for a in x.keys() {
        for b in y.keys() {
            for (name, out) in [
                ("convolution", ctx.convolve_terms(a, b)?),
                ("group-ring product", ctx.groupring_terms(a, b)?),
            ] {
                for t in out.keys() {
                    if t.grade() != a.grade() + b.grade() {
                        problems.push(format!(
                            "{} of {} and {} lands in grade {}, want {}",
                            name,
                            ctx.show_key(a),
                            ctx.show_key(b),
                            t.grade(),
                            a.grade() + b.grade()
                        ));
                    }
                    if t.filtration() > a.filtration() + b.filtration() {
                        problems.push(format!(
                            "{} of {} and {} raises filtration {} above {}",
                            name,
                            ctx.show_key(a),
                            ctx.show_key(b),
                            t.filtration(),
                            a.filtration() + b.filtration()
                        ));
                    }
                }
            }
        }
    }
    Ok(problems)
}

// ---- suite dispatch ------------------------------------------------------------

/// Run one named suite against a context.
pub fn run_suite(ctx: &Context, suite: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if !SUITES.contains(&suite) {
        return Err(Error::Invalid(format!(
            "unknown suite {suite:?}; known suites: {}",
            SUITES.join(", ")
        )));
    }
    let (seed, mut rng) = rng_for(cfg.seed, suite, ctx.label());
    let mut report = SuiteReport::new(suite, ctx.label(), seed, cfg.cases);
    let start = std::time::Instant::now();
    match suite {
        "hopf-axioms" => suite_hopf(ctx, &mut rng, cfg.cases, &mut report)?,
        "differential" => suite_differential(ctx, &mut rng, cfg.cases, &mut report)?,
        "bimodule-derivation" => suite_bimodule(ctx, &mut rng, cfg.cases, &mut report)?,
        "smash-equivalence" => suite_smash(ctx, &mut rng, cfg.cases, &mut report)?,
        "groupring-contrast" => suite_contrast(ctx, &mut rng, cfg.cases, &mut report)?,
        "tensor-lift" => suite_lift(ctx, &mut rng, cfg.cases, &mut report)?,
        "subalgebra-closure" => suite_closure(ctx, &mut report)?,
        _ => unreachable!(),
    }
    report.wall_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Run every suite against a context, in canonical order.
pub fn run_all(ctx: &Context, cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(ctx, s, cfg)).collect()
}

// ---- individual suites -----------------------------------------------------------

/// Collapse a coproduct against the counit on the chosen leg.
fn counit_collapse(ctx: &Context, x: &CurrentElement, left: bool) -> Result<CurrentElement> {
    let sq = ctx.coproduct(x)?;
    let mut out = ctx.zero_current();
    for ((a, b), c) in sq.terms() {
        let (eps_leg, keep) = if left { (a, b) } else { (b, a) };
        if eps_leg.even.is_unit() && eps_leg.odd.is_unit() {
            out = out.plus(&ctx.current_term(
                keep.point.clone(),
                keep.even.clone(),
                keep.odd.clone(),
                c.clone(),
            )?)?;
        }
    }
    Ok(out)
}

fn suite_hopf(
    ctx: &Context,
    rng: &mut ChaCha8Rng,
    cases: u32,
    report: &mut SuiteReport,
) -> Result<()> {
    for _ in 0..cases {
        let x = random_current(ctx, rng, BIG);
        let y = random_current(ctx, rng, BIG);
        let z = random_current(ctx, rng, BIG);
        let xs = random_current(ctx, rng, SMALL);
        let ys = random_current(ctx, rng, SMALL);
        let show = |v: &CurrentElement| ctx.show_current(v);

        let xy = ctx.convolve(&x, &y)?;
        let yz = ctx.convolve(&y, &z)?;
        report.check(
            "associativity",
            ctx.convolve(&xy, &z)? == ctx.convolve(&x, &yz)?,
            vec![show(&x), show(&y), show(&z)],
            || "(x*y)*z differs from x*(y*z)".to_string(),
        );

        let u = ctx.unit_current();
        report.check(
            "left unit",
            ctx.convolve(&u, &x)? == x,
            vec![show(&x)],
            || "(e|1|1)*x differs from x".to_string(),
        );
        report.check(
            "right unit",
            ctx.convolve(&x, &u)? == x,
            vec![show(&x)],
            || "x*(e|1|1) differs from x".to_string(),
        );

        report.check(
            "left counit law",
            counit_collapse(ctx, &x, true)? == x,
            vec![show(&x)],
            || "collapsing the first coproduct leg loses the element".to_string(),
        );
        report.check(
            "right counit law",
            counit_collapse(ctx, &x, false)? == x,
            vec![show(&x)],
            || "collapsing the second coproduct leg loses the element".to_string(),
        );

        // Coassociativity on the small budget.
        let sq = ctx.coproduct(&xs)?;
        let mut lhs: LinExpr<(CurrentKey, CurrentKey, CurrentKey)> = LinExpr::zero();
        let mut rhs: LinExpr<(CurrentKey, CurrentKey, CurrentKey)> = LinExpr::zero();
        for ((a, b), c) in sq.terms() {
            for ((a1, a2), d) in ctx.coproduct_term(a)?.terms.terms() {
                lhs.add_term((a1.clone(), a2.clone(), b.clone()), c * d);
            }
            for ((b1, b2), d) in ctx.coproduct_term(b)?.terms.terms() {
                rhs.add_term((a.clone(), b1.clone(), b2.clone()), c * d);
            }
        }
        report.check(
            "coassociativity",
            lhs == rhs,
            vec![show(&xs)],
            || "the two triple coproducts differ".to_string(),
        );

        // Bialgebra compatibility with the Koszul-signed square product.
        report.check(
            "product respects coproduct",
            ctx.coproduct(&ctx.convolve(&xs, &ys)?)?
                == ctx.square_convolve(&ctx.coproduct(&xs)?, &ctx.coproduct(&ys)?)?,
            vec![show(&xs), show(&ys)],
            || "coproduct of a product differs from the signed product of coproducts".to_string(),
        );

        // Both antipode identities.
        let sq = ctx.coproduct(&x)?;
        let mut left = ctx.zero_current();
        let mut right = ctx.zero_current();
        for ((a, b), c) in sq.terms() {
            let sa = ctx.antipode_term(a)?;
            let tb = ctx.current_term(b.point.clone(), b.even.clone(), b.odd.clone(), Scalar::one())?;
            left = left.plus(&ctx.convolve(&sa, &tb)?.scaled(c))?;
            let ta = ctx.current_term(a.point.clone(), a.even.clone(), a.odd.clone(), Scalar::one())?;
            let sb = ctx.antipode_term(b)?;
            right = right.plus(&ctx.convolve(&ta, &sb)?.scaled(c))?;
        }
        let target = ctx.unit_current().scaled(&ctx.counit_total(&x)?);
        report.check(
            "left antipode identity",
            left == target,
            vec![show(&x)],
            || "sum of S(x1)*x2 misses the counit times the unit".to_string(),
        );
        report.check(
            "right antipode identity",
            right == target,
            vec![show(&x)],
            || "sum of x1*S(x2) misses the counit times the unit".to_string(),
        );

        // Counit is multiplicative for the point convolution.
        report.check(
            "counit is multiplicative",
            ctx.counit(&ctx.convolve(&x, &y)?)?
                == point_map_convolve(ctx, &ctx.counit(&x)?, &ctx.counit(&y)?)?,
            vec![show(&x), show(&y)],
            || "counit of a product differs from the convolved counits".to_string(),
        );

        let mut problems = bookkeeping_problems(ctx, &xs)?;
        problems.extend(bookkeeping_pair_problems(ctx, &x, &y)?);
        report.check(
            "bookkeeping",
            problems.is_empty(),
            vec![show(&xs), show(&x), show(&y)],
            || problems.join("; "),
        );
    }
    Ok(())
}

fn suite_differential(
    ctx: &Context,
    rng: &mut ChaCha8Rng,
    cases: u32,
    report: &mut SuiteReport,
) -> Result<()> {
    for _ in 0..cases {
        let x = random_current(ctx, rng, BIG);
        let grade = pick(rng, ctx.dim() + 1);
        let xh = random_homogeneous(ctx, rng, grade, SMALL);
        let y = random_current(ctx, rng, SMALL);
        let show = |v: &CurrentElement| ctx.show_current(v);

        report.check(
            "boundary squares to zero",
            ctx.boundary(&ctx.boundary(&x)?)?.is_zero(),
            vec![show(&x)],
            || "the double boundary left a residue".to_string(),
        );

        // Graded Leibniz rule with the left factor homogeneous.
        let k = xh.homogeneous_grade().expect("sampled homogeneous");
        let lhs = ctx.boundary(&ctx.convolve(&xh, &y)?)?;
        let rhs = ctx
            .convolve(&ctx.boundary(&xh)?, &y)?
            .plus(&ctx.convolve(&xh, &ctx.boundary(&y)?)?.scaled(&Scalar::sign_pow(k)))?;
        report.check(
            "graded Leibniz rule",
            lhs == rhs,
            vec![show(&xh), show(&y)],
            || format!("d(x*y) differs from dx*y + (-1)^{k} x*dy"),
        );

        // The boundary commutes with the antipode on the nose: the sign the
        // antipode puts on a grade-g wedge word and the sign it puts on the
        // grade-(g-1) boundary words differ by exactly the factor the
        // boundary formula itself produces under reversal.
        let lhs = ctx.boundary(&ctx.antipode(&xh)?)?;
        let rhs = ctx.antipode(&ctx.boundary(&xh)?)?;
        report.check(
            "antipode commutes with the boundary",
            lhs == rhs,
            vec![show(&xh)],
            || "dS differs from Sd".to_string(),
        );

        // Co-Leibniz: the boundary is a termwise coderivation.
        let lhs = ctx.coproduct(&ctx.boundary(&xh)?)?;
        let mut rhs = ctx.zero_square();
        for ((a, b), c) in ctx.coproduct(&xh)?.terms() {
            let da = ctx.boundary_term(a)?;
            let tb = ctx.current_term(b.point.clone(), b.even.clone(), b.odd.clone(), Scalar::one())?;
            rhs = rhs.plus(&ctx.outer(&da, &tb)?.scaled(c))?;
            let ta = ctx.current_term(a.point.clone(), a.even.clone(), a.odd.clone(), Scalar::one())?;
            let db = ctx.boundary_term(b)?;
            let sign = Scalar::sign_pow(a.grade());
            rhs = rhs.plus(&ctx.outer(&ta, &db)?.scaled(&(c * &sign)))?;
        }
        report.check(
            "boundary is a coderivation",
            lhs == rhs,
            vec![show(&xh)],
            || "coproduct of the boundary differs from the signed leg boundaries".to_string(),
        );

        report.check(
            "counit kills boundaries",
            ctx.counit(&ctx.boundary(&x)?)?.is_zero(),
            vec![show(&x)],
            || "a boundary has nonzero counit".to_string(),
        );

        let mut problems = bookkeeping_problems(ctx, &x)?;
        problems.extend(bookkeeping_pair_problems(ctx, &xh, &y)?);
        report.check(
            "bookkeeping",
            problems.is_empty(),
            vec![show(&x), show(&xh), show(&y)],
            || problems.join("; "),
        );
    }
    Ok(())
}

fn suite_bimodule(
    ctx: &Context,
    rng: &mut ChaCha8Rng,
    cases: u32,
    report: &mut SuiteReport,
) -> Result<()> {
    for _ in 0..cases {
        let x = random_current(ctx, rng, SMALL);
        let y = random_current(ctx, rng, SMALL);
        let show = |v: &CurrentElement| ctx.show_current(v);

        report.check(
            "derived convolution matches",
            ctx.derived_convolution(&x, &y)? == ctx.convolve(&x, &y)?,
            vec![show(&x), show(&y)],
            || "the four-slot chain disagrees with direct convolution".to_string(),
        );

        report.check(
            "reduce undoes embed",
            ctx.reduce(&ctx.embed(&x)?)? == x,
            vec![show(&x)],
            || "embedding then reducing changed the current".to_string(),
        );

        // A four-slot element with a genuine right slot.
        let fs = ctx.fourslot_from_parts(
            &random_point(ctx, rng),
            &UeaElement::from_term(random_pbw(ctx, rng, 2), random_scalar(rng)),
            &ExtElement::from_term(random_ext(ctx, rng, 2), Scalar::one()),
            &UeaElement::from_term(random_pbw(ctx, rng, 2), Scalar::one()),
        )?;
        let rewritten = ctx.to_right_form(&fs)?;
        report.check(
            "rewriting clears the left slot",
            rewritten.left_slots_trivial(),
            vec![ctx.show_fourslot(&fs)],
            || "a left slot survived the rewrite".to_string(),
        );
        report.check(
            "rewriting preserves the reduced current",
            ctx.reduce(&rewritten)? == ctx.reduce(&fs)?,
            vec![ctx.show_fourslot(&fs)],
            || "the rewrite changed the reduced current".to_string(),
        );

        let mut problems = bookkeeping_problems(ctx, &ctx.reduce(&fs)?)?;
        problems.extend(bookkeeping_pair_problems(ctx, &x, &y)?);
        report.check(
            "bookkeeping",
            problems.is_empty(),
            vec![show(&x), show(&y), ctx.show_fourslot(&fs)],
            || problems.join("; "),
        );
    }
    Ok(())
}

fn suite_smash(
    ctx: &Context,
    rng: &mut ChaCha8Rng,
    cases: u32,
    report: &mut SuiteReport,
) -> Result<()> {
    let alg = ctx.algebra();
    for _ in 0..cases {
        let x = random_current(ctx, rng, SMALL);
        let y = random_current(ctx, rng, SMALL);
        let show = |v: &CurrentElement| ctx.show_current(v);

        report.check(
            "smash assembly equals convolution",
            ctx.smash_product(&x, &y)? == ctx.convolve(&x, &y)?,
            vec![show(&x), show(&y)],
            || "the smash-style assembly differs from convolution".to_string(),
        );

        // The action measures wedges through the coproduct.
        let v = random_pbw(ctx, rng, 2);
        let alpha = ExtElement::from_term(random_ext(ctx, rng, 2), Scalar::one());
        let beta = ExtElement::from_term(random_ext(ctx, rng, 2), Scalar::one());
        let v_elem = UeaElement::from_term(v.clone(), Scalar::one());
        let lhs = uea_act_ext(alg, &v_elem, &wedge(&alpha, &beta))?;
        let mut rhs = ExtElement::zero();
        for (v1, v2) in mono_coproduct(&v) {
            let a1 = uea_act_ext(alg, &UeaElement::from_term(v1, Scalar::one()), &alpha)?;
            let a2 = uea_act_ext(alg, &UeaElement::from_term(v2, Scalar::one()), &beta)?;
            rhs.add_assign(&wedge(&a1, &a2));
        }
        report.check(
            "action measures the wedge",
            lhs == rhs,
            vec![alg.show_uea(&v_elem), alg.show_ext(&alpha), alg.show_ext(&beta)],
            || "v.(a^b) differs from the coproduct expansion".to_string(),
        );

        // Group equivariance of the action.
        let p = random_point(ctx, rng);
        let a_p = ctx.act_matrix(&p)?;
        let lhs = crate::exterior::ad_extend_ext(&a_p, &uea_act_ext(alg, &v_elem, &alpha)?)?;
        let rhs = uea_act_ext(
            alg,
            &crate::enveloping::ad_extend_uea(alg, &a_p, &v_elem)?,
            &crate::exterior::ad_extend_ext(&a_p, &alpha)?,
        )?;
        report.check(
            "action is equivariant",
            lhs == rhs,
            vec![ctx.show_group(&p), alg.show_uea(&v_elem), alg.show_ext(&alpha)],
            || "A_p[v,a] differs from [A_p v, A_p a]".to_string(),
        );

        // Both twisted factor products are associative.
        let hs: Vec<(GroupElement, UeaElement)> = (0..3)
            .map(|_| {
                (
                    random_point(ctx, rng),
                    UeaElement::from_term(random_pbw(ctx, rng, 2), Scalar::one()),
                )
            })
            .collect();
        let h_lhs = ctx.hpart_mul(&ctx.hpart_mul(&hs[0], &hs[1])?, &hs[2])?;
        let h_rhs = ctx.hpart_mul(&hs[0], &ctx.hpart_mul(&hs[1], &hs[2])?)?;
        report.check(
            "twisted enveloping product is associative",
            h_lhs == h_rhs,
            hs.iter().map(|(p, v)| format!("({} , {})", ctx.show_group(p), alg.show_uea(v))).collect(),
            || "the twisted enveloping product fails associativity".to_string(),
        );

        let ws: Vec<(GroupElement, ExtElement)> = (0..3)
            .map(|_| {
                (
                    random_point(ctx, rng),
                    ExtElement::from_term(random_ext(ctx, rng, 2), Scalar::one()),
                )
            })
            .collect();
        let a_lhs = ctx.apart_mul(&ctx.apart_mul(&ws[0], &ws[1])?, &ws[2])?;
        let a_rhs = ctx.apart_mul(&ws[0], &ctx.apart_mul(&ws[1], &ws[2])?)?;
        report.check(
            "twisted exterior product is associative",
            a_lhs == a_rhs,
            ws.iter().map(|(p, a)| format!("({} , {})", ctx.show_group(p), alg.show_ext(a))).collect(),
            || "the twisted exterior product fails associativity".to_string(),
        );

        let problems = bookkeeping_pair_problems(ctx, &x, &y)?;
        report.check(
            "bookkeeping",
            problems.is_empty(),
            vec![show(&x), show(&y)],
            || problems.join("; "),
        );
    }
    Ok(())
}

fn suite_contrast(
    ctx: &Context,
    rng: &mut ChaCha8Rng,
    cases: u32,
    report: &mut SuiteReport,
) -> Result<()> {
    let alg = ctx.algebra();
    let n = alg.dim() as u8;
    let abelian = (0..n).all(|i| {
        (i + 1..n).all(|j| alg.bracket_basis(i, j).iter().all(Scalar::is_zero))
    });
    let e = ctx.group().identity();

    if !abelian {
        // Deterministic witness: generators with a nonzero bracket separate
        // the two products by exactly that bracket.
        'found: for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let coords = alg.bracket_basis(i, j);
                if coords.iter().all(Scalar::is_zero) {
                    continue;
                }
                let x = ctx.current_term(
                    e.clone(),
                    PbwMonomial::generator(i),
                    ExtMonomial::unit(),
                    Scalar::one(),
                )?;
                let y = ctx.current_term(
                    e.clone(),
                    PbwMonomial::unit(),
                    ExtMonomial::new(vec![j])?,
                    Scalar::one(),
                )?;
                let gap = ctx.convolve(&x, &y)?.minus(&ctx.groupring_convolve(&x, &y)?)?;
                let expect =
                    ctx.current_from_parts(&e, &UeaElement::one(), &ext_from_coords(coords))?;
                report.check(
                    "bracket separates the products",
                    gap == expect,
                    vec![ctx.show_current(&x), ctx.show_current(&y)],
                    || {
                        format!(
                            "expected gap {}, found {}",
                            ctx.show_current(&expect),
                            ctx.show_current(&gap)
                        )
                    },
                );
                report.note(format!(
                    "witness: {} * {} departs from the group-ring product by {}",
                    ctx.show_current(&x),
                    ctx.show_current(&y),
                    ctx.show_current(&expect)
                ));
                break 'found;
            }
        }
    } else {
        // Abelian bracket: hunt for a separation through the group action.
        let mut witness = None;
        'hunt: for p in ctx.default_samples() {
            let a_p = ctx.act_matrix(&p)?;
            if a_p.is_identity() {
                continue;
            }
            for j in 0..n {
                let image = ext_from_coords(&a_p.col(j as usize));
                let plain = ExtElement::from_term(ExtMonomial::new(vec![j])?, Scalar::one());
                if image != plain {
                    witness = Some((p.clone(), j));
                    break 'hunt;
                }
            }
        }
        match witness {
            Some((p, j)) => {
                let x = ctx.current_term(
                    p.clone(),
                    PbwMonomial::unit(),
                    ExtMonomial::unit(),
                    Scalar::one(),
                )?;
                let y = ctx.current_term(
                    e.clone(),
                    PbwMonomial::unit(),
                    ExtMonomial::new(vec![j])?,
                    Scalar::one(),
                )?;
                report.check(
                    "action separates the products",
                    ctx.convolve(&x, &y)? != ctx.groupring_convolve(&x, &y)?,
                    vec![ctx.show_current(&x), ctx.show_current(&y)],
                    || "the twisted and plain products coincide on the witness".to_string(),
                );
                report.note(format!(
                    "witness: the action at {} moves the wedge slot",
                    ctx.show_group(&p)
                ));
            }
            None => {
                // Nothing separates them; they must agree everywhere.
                let mut agreements = 0u32;
                for _ in 0..cases {
                    let x = random_current(ctx, rng, SMALL);
                    let y = random_current(ctx, rng, SMALL);
                    report.check(
                        "products coincide without bracket or action",
                        ctx.convolve(&x, &y)? == ctx.groupring_convolve(&x, &y)?,
                        vec![ctx.show_current(&x), ctx.show_current(&y)],
                        || "the products differ although bracket and action are trivial".to_string(),
                    );
                    let problems = bookkeeping_pair_problems(ctx, &x, &y)?;
                    report.check(
                        "bookkeeping",
                        problems.is_empty(),
                        vec![ctx.show_current(&x), ctx.show_current(&y)],
                        || problems.join("; "),
                    );
                    agreements += 1;
                }
                report.note(format!(
                    "abelian bracket and trivial action: products agreed on {agreements} random pairs"
                ));
                return Ok(());
            }
        }
    }

    // Random comparison in either branch: count how often the two products
    // actually differ (informational, not a failure either way).
    let mut differing = 0u32;
    for _ in 0..cases {
        let x = random_current(ctx, rng, SMALL);
        let y = random_current(ctx, rng, SMALL);
        if ctx.convolve(&x, &y)? != ctx.groupring_convolve(&x, &y)? {
            differing += 1;
        }
        let problems = bookkeeping_pair_problems(ctx, &x, &y)?;
        report.check(
            "bookkeeping",
            problems.is_empty(),
            vec![ctx.show_current(&x), ctx.show_current(&y)],
            || problems.join("; "),
        );
    }
    report.note(format!("the products differed on {differing} of {cases} random pairs"));
    Ok(())
}

fn suite_lift(
    ctx: &Context,
    rng: &mut ChaCha8Rng,
    cases: u32,
    report: &mut SuiteReport,
) -> Result<()> {
    for _ in 0..cases {
        let x = random_lift(ctx, rng, SMALL);
        let y = random_lift(ctx, rng, SMALL);
        let show = |v: &TensorLiftElement| ctx.show_lift(v);

        report.check(
            "quotient intertwines the boundary",
            ctx.phi(&ctx.lift_boundary(&x)?)? == ctx.boundary(&ctx.phi(&x)?)?,
            vec![show(&x)],
            || "normalizing before and after the boundary disagrees".to_string(),
        );
        report.check(
            "quotient intertwines the coproduct",
            ctx.phi_square(&ctx.lift_coproduct(&x)?)? == ctx.coproduct(&ctx.phi(&x)?)?,
            vec![show(&x)],
            || "normalizing before and after the coproduct disagrees".to_string(),
        );
        report.check(
            "quotient intertwines the counit",
            ctx.lift_counit(&x)? == ctx.counit(&ctx.phi(&x)?)?,
            vec![show(&x)],
            || "the lifted counit differs from the counit of the image".to_string(),
        );
        report.check(
            "quotient intertwines convolution",
            ctx.phi(&ctx.lift_convolve(&x, &y)?)? == ctx.convolve(&ctx.phi(&x)?, &ctx.phi(&y)?)?,
            vec![show(&x), show(&y)],
            || "normalizing before and after convolution disagrees".to_string(),
        );
        report.check(
            "quotient intertwines the antipode",
            ctx.phi(&ctx.lift_antipode(&x)?)? == ctx.antipode(&ctx.phi(&x)?)?,
            vec![show(&x)],
            || "normalizing before and after the antipode disagrees".to_string(),
        );

        // The lift is a Hopf algebra in its own right: free words replace
        // ordered monomials, yet every Hopf law below holds exactly.  Only
        // the boundary misbehaves upstairs (see the witness sweep).
        let z = random_lift(ctx, rng, SMALL);
        let unit = ctx.unit_lift();
        report.check(
            "lifted unit laws",
            ctx.lift_convolve(&unit, &x)? == x && ctx.lift_convolve(&x, &unit)? == x,
            vec![show(&x)],
            || "the empty word at the identity fails to be neutral upstairs".to_string(),
        );
        report.check(
            "lifted associativity",
            ctx.lift_convolve(&ctx.lift_convolve(&x, &y)?, &z)?
                == ctx.lift_convolve(&x, &ctx.lift_convolve(&y, &z)?)?,
            vec![show(&x), show(&y), show(&z)],
            || "lifted convolution fails to associate".to_string(),
        );

        let dx = ctx.lift_coproduct(&x)?;
        let mut left_counit = ctx.zero_lift();
        let mut right_counit = ctx.zero_lift();
        let mut left_anti = ctx.zero_lift();
        let mut right_anti = ctx.zero_lift();
        for ((a, b), c) in dx.terms() {
            if a.word.is_unit() && a.ext.is_unit() {
                left_counit = left_counit
                    .plus(&TensorLiftElement::from_single(ctx, b).scaled(c))?;
            }
            if b.word.is_unit() && b.ext.is_unit() {
                right_counit = right_counit
                    .plus(&TensorLiftElement::from_single(ctx, a).scaled(c))?;
            }
            let ta = TensorLiftElement::from_single(ctx, a);
            let tb = TensorLiftElement::from_single(ctx, b);
            left_anti = left_anti
                .plus(&ctx.lift_convolve(&ctx.lift_antipode(&ta)?, &tb)?.scaled(c))?;
            right_anti = right_anti
                .plus(&ctx.lift_convolve(&ta, &ctx.lift_antipode(&tb)?)?.scaled(c))?;
        }
        report.check(
            "lifted counit laws",
            left_counit == x && right_counit == x,
            vec![show(&x)],
            || "collapsing one leg of the lifted coproduct loses terms".to_string(),
        );
        let eta_eps = unit.scaled(&point_map_total(&ctx.lift_counit(&x)?));
        report.check(
            "lifted antipode identities",
            left_anti == eta_eps && right_anti == eta_eps,
            vec![show(&x)],
            || "the lifted antipode fails the defining identity".to_string(),
        );

        // Coassociativity upstairs, expanded through triples of keys.
        let mut lhs3: LinExpr<(LiftKey, LiftKey, LiftKey)> = LinExpr::zero();
        let mut rhs3: LinExpr<(LiftKey, LiftKey, LiftKey)> = LinExpr::zero();
        for ((a, b), c) in dx.terms() {
            for ((a1, a2), c1) in ctx.lift_coproduct(&TensorLiftElement::from_single(ctx, a))?.terms() {
                lhs3.add_term((a1.clone(), a2.clone(), b.clone()), c * c1);
            }
            for ((b1, b2), c1) in ctx.lift_coproduct(&TensorLiftElement::from_single(ctx, b))?.terms() {
                rhs3.add_term((a.clone(), b1.clone(), b2.clone()), c * c1);
            }
        }
        report.check(
            "lifted coassociativity",
            lhs3 == rhs3,
            vec![show(&x)],
            || "the two double coproducts disagree upstairs".to_string(),
        );

        // Bialgebra compatibility upstairs with the same Koszul crossing
        // sign, graded by the wedge slot alone.
        let dy = ctx.lift_coproduct(&y)?;
        let mut crossed: LinExpr<(LiftKey, LiftKey)> = LinExpr::zero();
        for ((a, b), c1) in dx.terms() {
            for ((u, w), c2) in dy.terms() {
                let sign = Scalar::sign_pow(b.grade() * u.grade());
                let first = ctx.lift_convolve(
                    &TensorLiftElement::from_single(ctx, a),
                    &TensorLiftElement::from_single(ctx, u),
                )?;
                let second = ctx.lift_convolve(
                    &TensorLiftElement::from_single(ctx, b),
                    &TensorLiftElement::from_single(ctx, w),
                )?;
                let scale = &(c1 * c2) * &sign;
                for (ka, ca) in first.terms() {
                    for (kb, cb) in second.terms() {
                        crossed.add_term((ka.clone(), kb.clone()), &(ca * cb) * &scale);
                    }
                }
            }
        }
        let straight = ctx.lift_coproduct(&ctx.lift_convolve(&x, &y)?)?;
        let mut straight_terms: LinExpr<(LiftKey, LiftKey)> = LinExpr::zero();
        for ((a, b), c) in straight.terms() {
            straight_terms.add_term((a.clone(), b.clone()), c.clone());
        }
        report.check(
            "lifted bialgebra compatibility",
            crossed == straight_terms,
            vec![show(&x), show(&y)],
            || "the lifted coproduct is not multiplicative with the Koszul crossing".to_string(),
        );

        let px = ctx.phi(&x)?;
        let py = ctx.phi(&y)?;
        let mut problems = bookkeeping_problems(ctx, &px)?;
        problems.extend(bookkeeping_pair_problems(ctx, &px, &py)?);
        report.check(
            "bookkeeping downstairs",
            problems.is_empty(),
            vec![show(&x), show(&y)],
            || problems.join("; "),
        );
    }

    // One witness sweep per run: the free boundary must fail to square to
    // zero somewhere in the searched family, and the residue must die under
    // the quotient map.
    let points = vec![ctx.group().identity(), random_point(ctx, rng)];
    match ctx.boundary_square_witness(&points, 2)? {
        Some((key, residue)) => {
            report.check(
                "residue dies in the quotient",
                ctx.phi(&residue)?.is_zero(),
                vec![ctx.show_lift(&TensorLiftElement::from_single(ctx, &key))],
                || "the double-boundary residue survives normalization".to_string(),
            );
            report.note(format!(
                "double boundary fails on {} with residue {}",
                ctx.show_lift(&TensorLiftElement::from_single(ctx, &key)),
                ctx.show_lift(&residue)
            ));
        }
        None => {
            report.note("no double-boundary witness up to word length 2".to_string());
        }
    }
    Ok(())
}

fn suite_closure(ctx: &Context, report: &mut SuiteReport) -> Result<()> {
    let subgroup = closure_subgroup(ctx);
    report.note(format!(
        "subgroup of order {} containing the identity",
        subgroup.len()
    ));
    let closure = ctx.is_subalgebra_closed(&subgroup, HopfOp::all())?;
    for check in &closure.checks {
        report.check(&check.name, check.passed, Vec::new(), || check.detail.clone());
    }
    let fibers = ctx.unit_fiber_checks()?;
    for check in &fibers.checks {
        report.check(&check.name, check.passed, Vec::new(), || check.detail.clone());
    }
    Ok(())
}

/// A deterministic subgroup for the closure suite: the largest proper cyclic
/// subgroup when the group is finite, the trivial subgroup otherwise.
pub fn closure_subgroup(ctx: &Context) -> Vec<GroupElement> {
    match ctx.group().elements() {
        Some(all) => {
            let order = all.len();
            let mut best: Option<Vec<GroupElement>> = None;
            for g in &all {
                if let Ok(sub) = ctx.group().cyclic_subgroup(g) {
                    if sub.len() < order && sub.len() > best.as_ref().map_or(0, |b| b.len()) {
                        best = Some(sub);
                    }
                }
            }
            best.unwrap_or_else(|| vec![ctx.group().identity()])
        }
        None => vec![ctx.group().identity()],
    }
}

impl TensorLiftElement {
    /// Single lifted key with unit coefficient, for rendering.
    fn from_single(ctx: &Context, key: &crate::tensor_lift::LiftKey) -> TensorLiftElement {
        TensorLiftElement {
            ctx: ctx.id(),
            terms: LinExpr::from_term(key.clone(), Scalar::one()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::contexts;

    #[test]
    fn every_suite_passes_on_every_builtin_context() {
        let cfg = SuiteConfig { seed: 11, cases: 6 };
        for ctx in contexts::all() {
            for suite in SUITES {
                let report = run_suite(&ctx, suite, &cfg).unwrap();
                assert!(
                    report.passed(),
                    "suite {suite} failed on {}: {:?}",
                    ctx.label(),
                    report.failures
                );
                assert!(report.checks > 0, "suite {suite} checked nothing");
            }
        }
    }

    #[test]
    fn seeds_are_stable_per_suite_and_context() {
        let a = derive_seed(7, "hopf-axioms", "c1");
        assert_eq!(a, derive_seed(7, "hopf-axioms", "c1"));
        assert_ne!(a, derive_seed(7, "hopf-axioms", "c2"));
        assert_ne!(a, derive_seed(7, "differential", "c1"));
        assert_ne!(a, derive_seed(8, "hopf-axioms", "c1"));
    }

    #[test]
    fn reports_serialize_without_wall_time() {
        let ctx = contexts::c1();
        let cfg = SuiteConfig { seed: 3, cases: 2 };
        let report = run_suite(&ctx, "groupring-contrast", &cfg).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(!json.contains("wall_ms"));
        assert!(json.contains("\"suite\":\"groupring-contrast\""));
        // Same seed, same bytes.
        let again = run_suite(&ctx, "groupring-contrast", &cfg).unwrap();
        assert_eq!(json, serde_json::to_string(&again).unwrap());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let ctx = contexts::c1();
        assert!(run_suite(&ctx, "nonsense", &SuiteConfig::default()).is_err());
    }

    #[test]
    fn contrast_notes_name_a_witness_on_nonabelian_contexts() {
        let ctx = contexts::c2();
        let report = run_suite(&ctx, "groupring-contrast", &SuiteConfig { seed: 1, cases: 4 }).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert!(report.notes.iter().any(|n| n.contains("witness")));
    }

    #[test]
    fn closure_subgroups_are_proper_where_possible() {
        assert_eq!(closure_subgroup(&contexts::c1()).len(), 2);
        assert_eq!(closure_subgroup(&contexts::c2()).len(), 1);
        assert_eq!(closure_subgroup(&contexts::c3()).len(), 3);
        assert_eq!(closure_subgroup(&contexts::c4()).len(), 1);
    }

    #[test]
    fn bookkeeping_helpers_accept_builtin_samples() {
        let ctx = contexts::c3();
        let x = ctx
            .current_term(
                GroupElement::Cayley(2),
                PbwMonomial::new(vec![0, 1]).unwrap(),
                ExtMonomial::new(vec![0, 2]).unwrap(),
                Scalar::one(),
            )
            .unwrap();
        assert!(bookkeeping_problems(&ctx, &x).unwrap().is_empty());
        assert!(bookkeeping_pair_problems(&ctx, &x, &x).unwrap().is_empty());
    }
}
