//! The individual theorem checks.

use crate::algebra::EffectAlgebra;
use crate::construct::{catalog, direct_product, interval_algebra};
use crate::element::{ElementId, ElementSet};
use crate::families::{chain_height, closure, enumerate_families, is_internally_compatible, is_mutually_compatible_set, SearchError};
use crate::iso::find_isomorphism;
use crate::structure::{
    blocks_by_rdp, central_elements, central_in_block, is_homogeneous, is_homogeneous_via_blocks, is_riesz_ideal,
    n_ary_decompose, sharp_elements,
};
use crate::classes::{classify, ClassWitness};

use super::context::Context;
use super::{Failure, Outcome};

/// Longest family tried by the n-ary decomposition check.
const FAMILY_CAP: usize = 4;

pub(crate) type CheckFn = fn(&Context, bool) -> Outcome;

/// Every check id with its implementation, in suite order.
pub(crate) const CHECKS: &[(&str, CheckFn)] = &[
    ("equiv", equiv),
    ("agoodclass", agoodclass),
    ("homogeneousn", homogeneousn),
    ("minuscompat", minuscompat),
    ("pluscompat", pluscompat),
    ("compatible-mutual", compatible_mutual),
    ("intclosure", intclosure),
    ("subalg", subalg),
    ("maxcompatisblock", maxcompatisblock),
    ("blockcover", blockcover),
    ("embedfinite", embedfinite),
    ("bigcor-agree", bigcor_agree),
    ("blockcenter", blockcenter),
    ("rieszcenter", rieszcenter),
    ("centers-eq", centers_eq),
    ("kcenter-closed", kcenter_closed),
    ("es-subalgebra", es_subalgebra),
    ("es-blocks", es_blocks),
    ("center-props", center_props),
    ("closure-laws", closure_laws),
    ("riesz-ideal", riesz_ideal),
];

fn fail(elements: Vec<ElementId>, detail: impl Into<String>) -> Outcome {
    Outcome::Fail(Failure {
        elements,
        detail: detail.into(),
    })
}

fn skipped(err: SearchError) -> Outcome {
    Outcome::Skipped(err.to_string())
}

/// `NotApplicable` unless the hypothesis holds or hypotheses are ignored.
fn hypothesis(holds: bool, unconditional: bool, what: &str) -> Option<Outcome> {
    (!holds && !unconditional).then(|| Outcome::NotApplicable(format!("not {what}")))
}

macro_rules! require {
    ($holds:expr, $unconditional:expr, $what:expr) => {
        if let Some(out) = hypothesis($holds, $unconditional, $what) {
            return out;
        }
    };
}

macro_rules! attempt {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return skipped(err),
        }
    };
}

fn equiv(ctx: &Context, _: bool) -> Outcome {
    let e = ctx.e;
    let compatible = attempt!(ctx.compatible(&e.carrier()));
    let rdp = ctx.rdp();
    let homogeneous = ctx.homogeneous();
    if rdp.is_ok() == (homogeneous.is_ok() && compatible) {
        return Outcome::Pass;
    }
    let w = rdp.err().or(homogeneous.err());
    fail(
        w.map(|w| vec![w.u, w.v1, w.v2]).unwrap_or_default(),
        format!(
            "rdp={} homogeneous={} compatible={compatible}",
            rdp.is_ok(),
            homogeneous.is_ok()
        ),
    )
}

fn agoodclass(ctx: &Context, unconditional: bool) -> Outcome {
    let in_class = ctx.is_orthoalgebra() || ctx.rdp().is_ok() || ctx.is_lattice();
    require!(in_class, unconditional, "an orthoalgebra, RDP or lattice ordered");
    match ctx.homogeneous() {
        Ok(()) => Outcome::Pass,
        Err(w) => fail(vec![w.u, w.v1, w.v2], "undecomposable triple"),
    }
}

fn homogeneousn(ctx: &Context, unconditional: bool) -> Outcome {
    require!(ctx.homogeneous().is_ok(), unconditional, "homogeneous");
    let e = ctx.e;
    let cap = chain_height(e).min(FAMILY_CAP);
    for fam in enumerate_families(e, &e.carrier(), Some(cap)) {
        let t = fam.total();
        for u in e.down(t).intersection(e.down(e.complement(t))).iter() {
            match n_ary_decompose(e, u, fam.members()) {
                Ok(Some(_)) => {}
                Ok(None) => {
                    let mut w = vec![u];
                    w.extend_from_slice(fam.members());
                    return fail(w, "no decomposition along the family");
                }
                Err(err) => return fail(vec![u], err.to_string()),
            }
        }
    }
    Outcome::Pass
}

/// For each compatible small `M` and each qualifying pair, `extend` gives
/// the element that must keep `M` compatible.
fn extension_law(
    ctx: &Context,
    unconditional: bool,
    pair_ok: fn(&EffectAlgebra, ElementId, ElementId) -> Option<ElementId>,
) -> Outcome {
    require!(ctx.homogeneous().is_ok(), unconditional, "homogeneous");
    let e = ctx.e;
    for m in ctx.small_subsets() {
        if !attempt!(ctx.compatible(&m)) {
            continue;
        }
        for a in m.iter() {
            for b in m.iter() {
                let Some(x) = pair_ok(e, a, b) else { continue };
                let mut grown = m;
                grown.insert(x);
                if !attempt!(ctx.compatible(&grown)) {
                    let mut w = m.to_vec();
                    w.extend([a, b]);
                    return fail(w, format!("adding {} breaks compatibility", e.name(x)));
                }
            }
        }
    }
    Outcome::Pass
}

fn minuscompat(ctx: &Context, unconditional: bool) -> Outcome {
    extension_law(ctx, unconditional, |e, a, b| e.try_ominus(a, b))
}

fn pluscompat(ctx: &Context, unconditional: bool) -> Outcome {
    extension_law(ctx, unconditional, |e, a, b| if a <= b { e.sum(a, b) } else { None })
}

fn compatible_mutual(ctx: &Context, _: bool) -> Outcome {
    for m in ctx.small_subsets() {
        if attempt!(ctx.compatible(&m)) && !is_mutually_compatible_set(ctx.e, &m) {
            return fail(m.to_vec(), "compatible but not mutually compatible");
        }
    }
    Outcome::Pass
}

fn intclosure(ctx: &Context, unconditional: bool) -> Outcome {
    require!(ctx.homogeneous().is_ok(), unconditional, "homogeneous");
    let e = ctx.e;
    for m in ctx.small_subsets() {
        if attempt!(is_internally_compatible(e, &m, ctx.budget)).is_none() {
            continue;
        }
        let cl = closure(e, &m);
        if attempt!(is_internally_compatible(e, &cl, ctx.budget)).is_none() {
            return fail(m.to_vec(), "closure is not internally compatible");
        }
    }
    let blocks = attempt!(ctx.blocks_by_compatibility());
    for b in blocks {
        if closure(e, b) != *b {
            return fail(b.to_vec(), "maximal internally compatible set is not closed");
        }
    }
    Outcome::Pass
}

fn subalg(ctx: &Context, unconditional: bool) -> Outcome {
    require!(ctx.homogeneous().is_ok(), unconditional, "homogeneous");
    let e = ctx.e;
    for f in ctx.subalgebras() {
        if closure(e, f) != *f {
            continue;
        }
        let restricted = match e.restrict(f) {
            Ok(r) => r,
            Err(err) => return fail(f.to_vec(), format!("restriction invalid: {err}")),
        };
        if let Err(w) = is_homogeneous(&restricted) {
            let mut elems = f.to_vec();
            elems.extend([w.u, w.v1, w.v2].map(|x| e.id(restricted.name(x)).expect("same names")));
            return fail(elems, "closed sub-effect algebra is not homogeneous");
        }
    }
    Outcome::Pass
}

fn maxcompatisblock(ctx: &Context, unconditional: bool) -> Outcome {
    require!(ctx.homogeneous().is_ok(), unconditional, "homogeneous");
    let by_compat = attempt!(ctx.blocks_by_compatibility());
    let by_rdp = &ctx.blocks().blocks;
    if by_compat == by_rdp.as_slice() {
        return Outcome::Pass;
    }
    let odd = by_compat
        .iter()
        .find(|b| !by_rdp.contains(b))
        .or_else(|| by_rdp.iter().find(|b| !by_compat.contains(b)))
        .expect("lists differ");
    fail(odd.to_vec(), "block characterizations disagree")
}

fn blockcover(ctx: &Context, unconditional: bool) -> Outcome {
    require!(ctx.homogeneous().is_ok(), unconditional, "homogeneous");
    let missing = ctx.e.carrier().difference(&ctx.blocks().union());
    match missing.first() {
        None => Outcome::Pass,
        Some(x) => fail(vec![x], "element lies in no block"),
    }
}

fn embedfinite(ctx: &Context, unconditional: bool) -> Outcome {
    require!(ctx.homogeneous().is_ok(), unconditional, "homogeneous");
    let blocks = ctx.blocks();
    for m in ctx.small_subsets() {
        if attempt!(ctx.compatible(&m)) && !blocks.blocks.iter().any(|b| m.is_subset(b)) {
            return fail(m.to_vec(), "compatible set lies in no block");
        }
    }
    Outcome::Pass
}

fn bigcor_agree(ctx: &Context, _: bool) -> Outcome {
    let direct = ctx.homogeneous();
    let via_blocks = is_homogeneous_via_blocks(ctx.e, ctx.blocks());
    if direct.is_ok() == via_blocks {
        Outcome::Pass
    } else {
        fail(
            direct.err().map(|w| vec![w.u, w.v1, w.v2]).unwrap_or_default(),
            format!("direct={} via-blocks={via_blocks}", direct.is_ok()),
        )
    }
}

fn blockcenter(ctx: &Context, unconditional: bool) -> Outcome {
    require!(ctx.homogeneous().is_ok(), unconditional, "homogeneous");
    let e = ctx.e;
    let sharp = ctx.sharp();
    for a in e.elements() {
        let r = match central_in_block(e, ctx.blocks(), a) {
            Ok(r) => r,
            Err(err) => return fail(vec![a], err.to_string()),
        };
        let s = sharp.contains(a);
        if s != r.in_some || s != r.in_every_containing {
            return fail(
                vec![a],
                format!(
                    "sharp={s} central-in-some={} central-in-every={}",
                    r.in_some, r.in_every_containing
                ),
            );
        }
    }
    Outcome::Pass
}

fn rieszcenter(ctx: &Context, unconditional: bool) -> Outcome {
    require!(ctx.rdp().is_ok(), unconditional, "RDP");
    let (s, c, p) = (ctx.sharp(), ctx.central(), ctx.principal());
    if s == c && c == p {
        return Outcome::Pass;
    }
    let odd = s.union(&c).union(&p).difference(&s.intersection(&c).intersection(&p));
    fail(vec![odd.first().expect("sets differ")], "sharp, central and principal differ")
}

fn k_center(ctx: &Context) -> ElementSet {
    ctx.blocks().intersection()
}

fn centers_eq(ctx: &Context, unconditional: bool) -> Outcome {
    require!(ctx.homogeneous().is_ok(), unconditional, "homogeneous");
    let e = ctx.e;
    let k = k_center(ctx);
    let k_alg = match e.restrict(&k) {
        Ok(a) => a,
        Err(err) => return fail(k.to_vec(), format!("K(E) is not an effect algebra: {err}")),
    };
    let c_k = k_alg.translate(&central_elements(&k_alg), e).expect("same names");
    let k_s = k_alg.translate(&sharp_elements(&k_alg), e).expect("same names");
    let c_e = ctx.central();
    if c_e == c_k && c_k == k_s {
        return Outcome::Pass;
    }
    let odd = c_e.union(&c_k).union(&k_s).difference(&c_e.intersection(&c_k).intersection(&k_s));
    fail(
        vec![odd.first().expect("sets differ")],
        format!("|C(E)|={} |C(K)|={} |K_S|={}", c_e.len(), c_k.len(), k_s.len()),
    )
}

fn kcenter_closed(ctx: &Context, unconditional: bool) -> Outcome {
    require!(ctx.homogeneous().is_ok(), unconditional, "homogeneous");
    let k = k_center(ctx);
    let extra = closure(ctx.e, &k).difference(&k);
    match extra.first() {
        None => Outcome::Pass,
        Some(x) => fail(vec![x], "closure of K(E) adds an element"),
    }
}

fn es_subalgebra(ctx: &Context, unconditional: bool) -> Outcome {
    require!(ctx.homogeneous().is_ok(), unconditional, "homogeneous");
    let e = ctx.e;
    let sharp = ctx.sharp();
    if let Some((a, b)) = e.sub_effect_algebra_defect(&sharp) {
        return fail(vec![a, b], "sharp elements not closed under ⊖");
    }
    let es = match e.restrict(&sharp) {
        Ok(es) => es,
        Err(err) => return fail(vec![], err.to_string()),
    };
    match crate::classes::orthoalgebra_witness(&es) {
        None => Outcome::Pass,
        Some(x) => fail(vec![e.id(es.name(x)).expect("same names")], "E_S is not an orthoalgebra"),
    }
}

fn es_blocks(ctx: &Context, unconditional: bool) -> Outcome {
    require!(ctx.homogeneous().is_ok(), unconditional, "homogeneous");
    let e = ctx.e;
    let sharp = ctx.sharp();
    let es = match e.restrict(&sharp) {
        Ok(es) => es,
        Err(err) => return fail(vec![], format!("E_S invalid: {err}")),
    };
    for b0 in blocks_by_rdp(&es) {
        let b0 = es.translate(&b0, e).expect("same names");
        for b in ctx.blocks().blocks.iter().filter(|b| b0.is_subset(b)) {
            let b_alg = e.restrict(b).expect("blocks are sub-effect algebras");
            let c_b = b_alg.translate(&central_elements(&b_alg), e).expect("same names");
            if c_b != b0 {
                let mut w = b0.to_vec();
                w.extend(b.iter());
                return fail(w, "block of E_S differs from the center of a block containing it");
            }
        }
    }
    Outcome::Pass
}

fn center_props(ctx: &Context, _: bool) -> Outcome {
    let e = ctx.e;
    let c = ctx.central();
    if let Some((a, b)) = e.sub_effect_algebra_defect(&c) {
        return fail(vec![a, b], "center not closed under ⊖");
    }
    let c_alg = match e.restrict(&c) {
        Ok(a) => a,
        Err(err) => return fail(vec![], err.to_string()),
    };
    let classes = attempt!(classify(&c_alg, ctx.budget));
    if let Some(w) = classes.boolean.witness {
        let elems = w.elements().iter().map(|&x| e.id(c_alg.name(x)).expect("same names")).collect();
        let what = match w {
            ClassWitness::Incompatible => "center is incompatible".to_string(),
            other => format!("center is not Boolean ({})", other.kind()),
        };
        return fail(elems, what);
    }
    for a in c.iter() {
        if let Some(x) = e.elements().find(|&x| e.meet(a, x).is_none()) {
            return fail(vec![a, x], "central element without a meet");
        }
        if !splits_as_product(e, a) {
            return fail(vec![a], "E is not [0,a] × [0,a']");
        }
    }
    Outcome::Pass
}

/// `E ≅ [0,a] × [0,a']`.
pub(crate) fn splits_as_product(e: &EffectAlgebra, a: ElementId) -> bool {
    let part = |x: ElementId| {
        if x == e.zero() {
            Ok(catalog::trivial())
        } else {
            interval_algebra(e, x)
        }
    };
    let (Ok(lo), Ok(hi)) = (part(a), part(e.complement(a))) else {
        return false;
    };
    match direct_product(&lo, &hi) {
        Ok(p) => find_isomorphism(e, &p).is_some(),
        Err(_) => false,
    }
}

fn closure_laws(ctx: &Context, _: bool) -> Outcome {
    let e = ctx.e;
    let ortho = ctx.is_orthoalgebra();
    let zero = ElementSet::singleton(e.zero());
    for m in ctx.small_subsets() {
        let cl = closure(e, &m);
        if !m.is_subset(&cl) {
            return fail(m.to_vec(), "closure is not extensive");
        }
        if closure(e, &cl) != cl {
            return fail(m.to_vec(), "closure is not idempotent");
        }
        if ortho && cl != m.union(&zero) {
            return fail(m.to_vec(), "closure in an orthoalgebra adds more than 0");
        }
        if m.len() < ctx.subset_cap {
            for x in e.carrier().difference(&m).iter() {
                let mut n = m;
                n.insert(x);
                if !cl.is_subset(&closure(e, &n)) {
                    let mut w = m.to_vec();
                    w.push(x);
                    return fail(w, "closure is not monotone");
                }
            }
        }
    }
    Outcome::Pass
}

fn riesz_ideal(ctx: &Context, _: bool) -> Outcome {
    let e = ctx.e;
    let c = ctx.central();
    for a in e.elements() {
        if c.contains(a) != is_riesz_ideal(e, e.down(a)) {
            return fail(vec![a], format!("central={} but [0,a] Riesz ideal={}", c.contains(a), !c.contains(a)));
        }
    }
    Outcome::Pass
}
