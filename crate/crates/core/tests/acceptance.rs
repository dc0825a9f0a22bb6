//! Acceptance suite: one line per criterion, `PASS` or `FAIL` with the reason.
//! Each criterion runs on its own thread so a failure never hides another.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use galbim::bimod::{
    bracket_tensor_identity, characters, classify, is_galois, jacobson_tensor_identity, split_analysis, Bimodule,
    Derivation,
};
use galbim::coact::{
    galois_group_of_coaction, in_q_x2_x3, lemma_inclo_matrix, matrix_certificate, semisimple_bound,
    truncated_invariants, BoundVerdict, FieldCoaction, TruncatedAction,
};
use galbim::fields::{automorphisms, extend, AutomorphismGroup, Morphism, SplitContext, Subfield};
use galbim::fixtures::{
    cube_root_closure, cube_root_non_normal, nichols_generic_rep, nonsem, quadratic_over_qs, separable_base_change,
    NonSplitTower, TaftTower,
};
use galbim::group::FiniteGroup;
use galbim::hecke::{galois_idempotent, HeckeAlgebra, HeckeElement};
use galbim::hopf::{adjoint_action, group_algebra, nichols16, taft, FinAlgebra, ModuleAction};
use galbim::kernel::{mat_char_poly, mat_is_semisimple, Field, Matrix, Poly, Value};
use galbim::linalg::composition_factors;
use galbim::multibase::{
    commsem_classify, divisibility_check, incidence_graph, lemma_fp, quasi_galois_construct, random_idempotent_block,
    MatrixAlgebraBimodule,
};
use galbim::Error;

type Check = Result<(), String>;

fn ensure(cond: bool, what: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn ok<T>(r: galbim::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn same_subfield(a: &Subfield, b: &Subfield) -> bool {
    a.degree_over_base() == b.degree_over_base() && a.basis_in_ambient().iter().all(|x| b.contains(x).unwrap())
}

fn q() -> Field {
    Field::rationals()
}

fn q_sqrt2() -> Field {
    let q = q();
    extend(&q, "a", &Poly::from_i64s(&q, &[-2, 0, 1])).unwrap()
}

fn q_cbrt2() -> Field {
    let q = q();
    extend(&q, "c", &Poly::from_i64s(&q, &[-2, 0, 0, 1])).unwrap()
}

fn biquadratic() -> Field {
    let a = q_sqrt2();
    extend(&a, "b", &Poly::from_i64s(&a, &[-3, 0, 1])).unwrap()
}

fn galois_group(l: &Field) -> (AutomorphismGroup, SplitContext) {
    let ctx = SplitContext::new(l);
    (automorphisms(l, None, &ctx).unwrap(), ctx)
}

fn taft_coaction(t: &TaftTower) -> FieldCoaction {
    let k = taft(&t.constants, t.m, 2, &t.q).unwrap();
    let mut img = vec![t.l.zero(); k.dim()];
    img[t.m] = t.z();
    img[1] = t.l.one();
    FieldCoaction::new(&t.l, &k, vec![img]).unwrap()
}

fn swap_coaction() -> (FieldCoaction, SplitContext) {
    let l = quadratic_over_qs().unwrap();
    let t = l.generator().unwrap();
    let ctx = SplitContext::with_pool(&l, vec![t.clone(), l.neg(&t)]);
    let g = automorphisms(&l, None, &ctx).unwrap();
    (FieldCoaction::from_automorphisms(&g).unwrap(), ctx)
}

fn s3_coaction() -> (FieldCoaction, SplitContext) {
    let (g, ctx) = galois_group(&cube_root_closure().unwrap());
    (FieldCoaction::from_automorphisms(&g).unwrap(), ctx)
}

fn cube_root_context() -> (Field, SplitContext) {
    let (l, e, pool) = cube_root_non_normal().unwrap();
    (l, SplitContext::with_pool(&e, pool))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let t = ok(TaftTower::new(2), "tower")?;
    let c = taft_coaction(&t);
    let inv = ok(c.invariants(), "invariants")?;
    // Q^K = B = Q(i)(u): degree one over the base, containing (z² + 1)²
    ensure(inv.degree_over_base() == 1, format!("invariants of degree {}", inv.degree_over_base()))?;
    let l = &t.l;
    let z2 = l.add(&l.mul(&t.z(), &t.z()), &l.one());
    ensure(l.mul(&z2, &z2) == t.u(), "(z² + 1)² ≠ u")?;
    ensure(ok(inv.contains(&t.u()), "contains")?, "u is not invariant")?;
    ensure(inv.index() == 4, format!("[L:Q^K] = {}", inv.index()))?;
    let dv = ok(c.divisibility(), "divisibility")?;
    ensure((dv.index, dv.dim, dv.quotient) == (4, 8, 2), format!("{dv:?}"))?;
    let ctx = t.context();
    let g = ok(galois_group_of_coaction(&c, &ctx), "group")?;
    let grp = g.group.group();
    ensure(grp.order() == 8, format!("group order {}", grp.order()))?;
    ensure(!grp.is_abelian(), "group is abelian")?;
    ensure(grp.splits_over_elementary_abelian(4), "no split order-4 elementary abelian normal subgroup")?;
    let p = ok(c.bimodule(), "bimodule")?;
    let cl = ok(classify(&p, &ctx), "classify")?;
    ensure(cl.r == 2, format!("r = {}", cl.r))?;
    ensure(same_subfield(&cl.center, &inv), "center differs from invariants")?;
    ensure(start.elapsed() < Duration::from_secs(60), format!("took {:?}", start.elapsed()))
}

fn coaction_is_galois(name: &str, c: &FieldCoaction, ctx: &SplitContext) -> Check {
    let p = ok(c.bimodule(), name)?;
    let v = ok(is_galois(&p, ctx), name)?;
    ensure(v.galois, format!("{name}: not Galois"))?;
    let inv = ok(c.invariants(), name)?;
    ensure(same_subfield(&ok(p.center(), name)?, &inv), format!("{name}: center ≠ invariants"))?;
    let (psi, xi) = ok(c.psi_xi(), name)?;
    ensure(psi.mul(&xi).is_identity() && xi.mul(&psi).is_identity(), format!("{name}: ψ, ξ not inverse"))
}

fn criterion_2() -> Check {
    let l = quadratic_over_qs().unwrap();
    let k = group_algebra(&l.base(), &FiniteGroup::cyclic(1)).unwrap();
    let triv = FieldCoaction::trivial(&l, &k).unwrap();
    let t = l.generator().unwrap();
    coaction_is_galois("trivial", &triv, &SplitContext::with_pool(&l, vec![t.clone(), l.neg(&t)]))?;
    let (c, ctx) = swap_coaction();
    coaction_is_galois("Fun(Z/2)", &c, &ctx)?;
    let (c, ctx) = s3_coaction();
    coaction_is_galois("Fun(S3)", &c, &ctx)?;
    for m in [2, 3] {
        let tw = TaftTower::new(m).unwrap();
        coaction_is_galois(&format!("Taft({m},2)"), &taft_coaction(&tw), &tw.context())?;
    }
    Ok(())
}

/// Galois bimodules together with sample elements of `L`.
fn galois_fixtures() -> Vec<(String, Bimodule, Vec<Value>)> {
    let mut out = Vec::new();
    let mut push = |name: &str, p: Bimodule| {
        let l = p.field().clone();
        let g = l.generators();
        let last = g.last().unwrap().clone();
        let sum = g.iter().fold(l.one(), |acc, x| l.add(&acc, x));
        let prod = g.iter().fold(l.from_i64(2), |acc, x| l.mul(&acc, x));
        let elems = vec![last.clone(), sum, l.add(&l.mul(&prod, &prod), &last), l.from_i64(3)];
        out.push((name.to_string(), p, elems));
    };
    for (name, l) in [("Q(√2)", q_sqrt2()), ("Q(∛2)", q_cbrt2()), ("Q(√2,√3)", biquadratic())] {
        push(&format!("reg {name}"), Bimodule::regular_over(&Subfield::base_of(&l)).unwrap());
    }
    let l = biquadratic();
    let mid = Subfield::new(Morphism::layer_inclusion(&q_sqrt2(), &l));
    push("reg Q(√2,√3)/Q(√2)", Bimodule::regular_over(&mid).unwrap());
    let (g, _) = galois_group(&q_sqrt2());
    push("P(2,Q(√2),C2)", Bimodule::p_n_l_g(&[2, 2], &g).unwrap());
    let t = TaftTower::new(2).unwrap();
    push("Taft(2,2)", taft_coaction(&t).bimodule().unwrap());
    push("Fun(Z/2)", swap_coaction().0.bimodule().unwrap());
    for p in [2, 3] {
        let l = nonsem(p).unwrap();
        push(&format!("nonsem p={p}"), Bimodule::regular_over(&Subfield::base_of(&l)).unwrap());
    }
    out
}

fn criterion_3() -> Check {
    let mut pairs = 0;
    for (name, p, elems) in galois_fixtures() {
        let z = ok(p.center(), &name)?;
        let d = p.rank();
        for a in &elems {
            let mu = ok(p.min_poly_right(a), &name)?;
            let chi = ok(p.char_poly_right(a), &name)?;
            for c in mu.coeffs() {
                ensure(ok(z.contains(c), &name)?, format!("{name}: μ coefficient outside the center"))?;
            }
            let k = mu.degree().unwrap();
            ensure(d % k == 0, format!("{name}: deg μ = {k} does not divide {d}"))?;
            ensure(chi == mu.pow((d / k) as u64), format!("{name}: χ ≠ μ^r"))?;
            pairs += 1;
        }
    }
    ensure(pairs >= 20, format!("only {pairs} pairs"))
}

fn criterion_4() -> Check {
    let mut cases: Vec<(String, Bimodule, Subfield, usize, SplitContext)> = Vec::new();
    for r in 1..=3 {
        let l = q_sqrt2();
        let (g, ctx) = galois_group(&l);
        let reg = Bimodule::regular_over(&Subfield::base_of(&l)).unwrap();
        let mut multiple = reg.clone();
        for _ in 1..r {
            multiple = multiple.direct_sum(&reg).unwrap();
        }
        cases.push((format!("reg(Q(√2))^{r}"), multiple, Subfield::base_of(&l), r, ctx.clone()));
        cases.push((
            format!("P(Q(√2),C2)^{r}"),
            Bimodule::p_n_l_g(&[r, r], &g).unwrap(),
            Subfield::base_of(&l),
            r,
            ctx,
        ));
        let b = biquadratic();
        let (g, ctx) = galois_group(&b);
        cases.push((
            format!("P(Q(√2,√3),V4)^{r}"),
            Bimodule::p_n_l_g(&[r; 4], &g).unwrap(),
            Subfield::base_of(&b),
            r,
            ctx,
        ));
    }
    let b = biquadratic();
    let mid = Subfield::new(Morphism::layer_inclusion(&q_sqrt2(), &b));
    cases.push(("reg Q(√2,√3)/Q(√2)".into(), Bimodule::regular_over(&mid).unwrap(), mid, 1, SplitContext::new(&b)));
    let (l, ctx) = cube_root_context();
    cases.push(("reg Q(∛2)".into(), Bimodule::regular_over(&Subfield::base_of(&l)).unwrap(), Subfield::base_of(&l), 1, ctx));
    for (name, c, ctx, r) in [
        ("Fun(Z/2)", swap_coaction().0, swap_coaction().1, 1),
        ("Fun(S3)", s3_coaction().0, s3_coaction().1, 1),
    ] {
        cases.push((name.into(), c.bimodule().unwrap(), c.invariants().unwrap(), r, ctx));
    }
    let t = TaftTower::new(2).unwrap();
    let c = taft_coaction(&t);
    cases.push(("Taft(2,2)".into(), c.bimodule().unwrap(), c.invariants().unwrap(), 2, t.context()));
    for (name, p, f, r, ctx) in cases {
        let cl = ok(classify(&p, &ctx), &name)?;
        ensure(same_subfield(&cl.center, &f), format!("{name}: wrong F"))?;
        ensure(cl.r == r, format!("{name}: r = {} expected {r}", cl.r))?;
        ensure(p.rank() % f.index() == 0, format!("{name}: [L:F] ∤ d"))?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    for p in [2u64, 3] {
        let l = nonsem(p).unwrap();
        let reg = Bimodule::regular_over(&Subfield::base_of(&l)).unwrap();
        let u = l.generator().unwrap();
        let t = l.embed_from(&l.base(), &l.base().generator().unwrap());
        let mut c = vec![l.zero(); p as usize + 1];
        c[0] = l.neg(&t);
        c[p as usize] = l.one();
        ensure(ok(reg.min_poly_right(&u), "μ")? == Poly::new(&l, c), format!("p={p}: μ_u ≠ x^p − t"))?;
        ensure(!ok(mat_is_semisimple(&reg.phi(&u)), "semisimple")?, format!("p={p}: φ(u) semisimple"))?;
        let cf = ok(composition_factors(&reg, &SplitContext::with_pool(&l, vec![u.clone()])), "factors")?;
        ensure(cf.len() == 1 && cf[0].0.is_identity() && cf[0].1 == p as usize, format!("p={p}: factors {}", cf.len()))?;
        // D = d/du on the degree-p layer
        let d = ok(Derivation::new(&l, vec![l.one()]), "derivation")?;
        ensure(ok(jacobson_tensor_identity(&d), "jacobson")?, format!("p={p}: M(D^p) not found"))?;
        ensure(ok(jacobson_tensor_identity(&d.scale(&u)), "jacobson")?, format!("p={p}: M((uD)^p) not found"))?;
        // the degree p² tower u^p = t, w^p = u with X = ∂_w, Y = w∂_w
        let lt = ok(galbim::fixtures::jacobson_tower(p), "tower")?;
        let w = lt.generator().unwrap();
        let x = ok(Derivation::new(&lt, vec![lt.zero(), lt.one()]), "X")?;
        let y = ok(Derivation::new(&lt, vec![lt.zero(), w]), "Y")?;
        ensure(ok(bracket_tensor_identity(&x, &y), "bracket")?, format!("p={p}: M([X,Y]) not found"))?;
        ensure(ok(jacobson_tensor_identity(&y), "jacobson")?, format!("p={p}: M(Y^p) not found"))?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let f = NonSplitTower::new().unwrap();
    let p = Bimodule::regular_over(&Subfield::base_of(&f.e1)).unwrap();
    let sa = ok(split_analysis(&p, &f.context()), "split analysis")?;
    ensure(!sa.is_split, "reported split")?;
    ensure(sa.group.order() == 8, format!("|G| = {}", sa.group.order()))?;
    ensure(sa.gal_over_l.len() == 2, format!("|Gal(E/L)| = {}", sa.gal_over_l.len()))?;
    ensure(!sa.group.group().is_normal(&sa.gal_over_l), "Gal(E/L) is normal")?;

    let (l, e, ctx_l, ctx) = separable_base_change().unwrap();
    let gl = automorphisms(&l, None, &ctx_l).unwrap();
    let n = [1usize, 2];
    let pl = Bimodule::p_n_l_g(&n, &gl).unwrap();
    let ge = automorphisms(&e, None, &ctx).unwrap();
    let ext = e.degree_over_base() / l.degree_over_base();
    ensure(ge.order() == gl.order() * ext, format!("|G′| = {}", ge.order()))?;
    let into_e = Morphism::layer_inclusion(&l, &e);
    let n_e: Vec<usize> = ge
        .elements()
        .iter()
        .map(|g| {
            let restricted = g.compose(&into_e).unwrap();
            let k = gl
                .elements()
                .iter()
                .position(|h| into_e.compose(h).unwrap().images() == restricted.images())
                .unwrap();
            n[k]
        })
        .collect();
    let expect = Bimodule::p_n_l_g(&n_e, &ge).unwrap();
    let pe = ok(pl.base_change(&e), "base change")?;
    ensure(
        ok(characters(&pe, &ctx), "characters")? == ok(characters(&expect, &ctx), "characters")?,
        "base change differs from P(n, E, G′)",
    )
}

fn q_over(degrees: &[usize]) -> Vec<Morphism> {
    degrees
        .iter()
        .map(|&d| {
            let f = match d {
                1 => q(),
                2 => q_sqrt2(),
                _ => q_cbrt2(),
            };
            Morphism::layer_inclusion(&q(), &f)
        })
        .collect()
}

fn tuples(n: usize, max: usize) -> Vec<Vec<usize>> {
    (0..n).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|t| {
                (1..=max).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect()
    })
}

fn criterion_7() -> Check {
    let mut count = 0;
    for n in 1..=3 {
        for deg in tuples(n, 3) {
            // the construction is symmetric in the components; one ordering each
            if deg.windows(2).any(|w| w[0] > w[1]) {
                continue;
            }
            let psi = q_over(&deg);
            for a in tuples(n, 2) {
                for r in tuples(n, 2) {
                    let p = ok(quasi_galois_construct(&q(), &psi, &a, &r), "construct")?;
                    let c = ok(commsem_classify(&p), "classify")?;
                    let g = a.iter().fold(0, |g, x| g.gcd(x));
                    let an: Vec<usize> = a.iter().map(|x| x / g).collect();
                    let rn: Vec<usize> = r.iter().map(|x| x * g).collect();
                    ensure(
                        c.degrees == deg && c.a == an && c.r == rn,
                        format!("deg {deg:?} a {a:?} r {r:?}: round trip failed"),
                    )?;
                    ensure(incidence_graph(&p).components.len() == 1, "construction is not connected")?;
                    ensure(p.dims().iter().flatten().all(|&x| x > 0), format!("deg {deg:?}: [P] not positive"))?;
                    count += 1;
                }
            }
        }
    }
    ensure(count > 0, "no constructions")?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..50 {
        let (p, qq) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let zero = i % 3 == 0;
        let a = random_idempotent_block(&mut rng, p, qq, zero);
        let y_nonneg = a[..p].iter().all(|row| row[p..].iter().all(|x| *x >= BigRational::from_integer(0.into())));
        match lemma_fp(&a, p) {
            Ok(v) => ensure(y_nonneg && v, format!("sample {i}: Y ≠ 0"))?,
            Err(Error::Invalid(_)) => ensure(!y_nonneg, format!("sample {i}: rejected a valid matrix"))?,
            Err(e) => return Err(format!("sample {i}: {e}")),
        }
    }
    Ok(())
}

fn criterion_8() -> Check {
    let mut fixtures = Vec::new();
    for (deg, a, r) in [
        (vec![1], vec![1], vec![1]),
        (vec![2], vec![1], vec![2]),
        (vec![3], vec![1], vec![1]),
        (vec![1, 2], vec![1, 2], vec![1, 1]),
        (vec![1, 2], vec![1, 2], vec![1, 2]),
        (vec![1, 1], vec![1, 1], vec![2, 1]),
    ] {
        fixtures.push(ok(quasi_galois_construct(&q(), &q_over(&deg), &a, &r), "construct")?);
    }
    let mut galois = 0;
    for p in &fixtures {
        let before = ok(commsem_classify(p), "classify")?;
        for m in tuples(p.n(), 3) {
            let big = ok(MatrixAlgebraBimodule::inflate(p, &m), "inflate")?;
            let back = ok(big.morita_reduce(), "reduce")?;
            ensure(&back == p, format!("m = {m:?}: reduce ∘ inflate ≠ id"))?;
            let after = ok(commsem_classify(&back), "classify")?;
            ensure(
                after.degrees == before.degrees && after.center.degree_over_base() == before.center.degree_over_base(),
                "center changed",
            )?;
            // Galois exactly when the sizes are proportional to a and r is too
            let k = m[0] / before.a[0];
            let proportional = m.iter().zip(&before.a).all(|(x, y)| *x == k * y);
            let balanced = before.r.iter().zip(&before.a).all(|(r, a)| r * before.a[0] == a * before.r[0]);
            match big.rank() {
                Ok(_) => {
                    ensure(proportional && balanced, format!("m = {m:?}: unexpectedly Galois"))?;
                    let dv = ok(divisibility_check(&big), "divisibility")?;
                    ensure(dv.d % dv.sum == 0 && dv.quotient == dv.d / dv.sum, format!("{dv:?}"))?;
                    galois += 1;
                }
                Err(_) => ensure(!(proportional && balanced), format!("m = {m:?}: expected Galois"))?,
            }
        }
    }
    ensure(galois >= 6, format!("only {galois} Galois inflations"))
}

fn random_element(a: &std::sync::Arc<HeckeAlgebra>, rng: &mut ChaCha8Rng) -> HeckeElement {
    let v = (0..a.dim())
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(-4..5)), BigInt::from(rng.gen_range(1..4))))
        .collect();
    HeckeElement::from_coset_values(a, v).unwrap()
}

fn criterion_9() -> Check {
    let mut split: Vec<(String, Bimodule, SplitContext)> = Vec::new();
    for (name, l) in [("Q(√2)", q_sqrt2()), ("Q(√2,√3)", biquadratic()), ("S3", cube_root_closure().unwrap())] {
        let (g, ctx) = galois_group(&l);
        for r in 1..=2 {
            split.push((format!("P({name})^{r}"), Bimodule::p_n_l_g(&vec![r; g.order()], &g).unwrap(), ctx.clone()));
        }
        split.push((format!("L({name})"), Bimodule::trivial(&l, 2), ctx));
    }
    for (name, p, ctx) in &split {
        let gi = ok(galois_idempotent(p, ctx), name)?;
        ensure(gi.e.convolve(&gi.e).unwrap() == gi.e, format!("{name}: e∗e ≠ e"))?;
        let want = BigRational::new(1.into(), BigInt::from(gi.group_order));
        ensure(gi.e.support().iter().all(|&x| *gi.e.at(x) == want), format!("{name}: e not 1/|G|"))?;
        ensure(gi.support_is_subgroup, format!("{name}: support not a subgroup"))?;
        ensure(gi.r * gi.group_order == gi.h_order * gi.d, format!("{name}: r ≠ |H|d/|G|"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(48);
    let groups = [
        FiniteGroup::symmetric(4),
        FiniteGroup::cyclic(48),
        FiniteGroup::symmetric(3).product(&FiniteGroup::cyclic(8)),
    ];
    for g in &groups {
        for _ in 0..4 {
            let gens: Vec<usize> = (0..rng.gen_range(0..3)).map(|_| rng.gen_range(0..g.order())).collect();
            let h: BTreeSet<usize> = g.generated(&gens);
            let a = ok(HeckeAlgebra::new(g, &h), "hecke")?;
            let (x, y, z) = (random_element(&a, &mut rng), random_element(&a, &mut rng), random_element(&a, &mut rng));
            let lhs = x.convolve(&y).unwrap().convolve(&z).unwrap();
            let rhs = x.convolve(&y.convolve(&z).unwrap()).unwrap();
            ensure(lhs == rhs, format!("|G| = {}: convolution not associative", g.order()))?;
        }
    }
    Ok(())
}

fn criterion_10() -> Check {
    for (name, act) in [
        ("condition (2)", TruncatedAction::condition_two()),
        ("condition (4)", TruncatedAction::condition_four()),
    ] {
        let rows = ok(truncated_invariants(&act, 8), name)?;
        ensure(rows.len() == 9, format!("{name}: {} degrees", rows.len()))?;
        for r in &rows {
            let only_constants = if name == "condition (2)" {
                r.dim_invariants == 1
            } else {
                r.dim_restricted == Some(1)
            };
            ensure(only_constants, format!("{name}: nonconstant invariant in degree {}", r.degree))?;
        }
    }
    let f = Field::function_field(&q(), "x").unwrap();
    let m = ok(lemma_inclo_matrix(&f), "matrix")?;
    let cert = ok(matrix_certificate(&m, |v| in_q_x2_x3(&f, v)), "certificate")?;
    let x = f.generator().unwrap();
    let t3 = Poly::new(&f, vec![f.neg(&f.pow(&x, 3)), f.zero(), f.zero(), f.one()]);
    let tx = Poly::new(&f, vec![x.clone(), f.one()]);
    ensure(cert.min_poly == t3.mul(&tx), "μ ≠ (t³ − x³)(t + x)")?;
    ensure(matches!(cert.require_in_z(), Err(Error::CoefficientEscapesZ(_))), "μ does not escape Z")?;

    let h = ok(nichols16(&q()), "nichols")?;
    let rep = ok(nichols_generic_rep(&h), "rep")?;
    let act = ok(adjoint_action(&rep), "adjoint")?;
    let inv = ok(act.invariants(), "invariants")?;
    let one = act.algebra().one();
    let scalar = inv.len() == 1 && {
        let c = inv[0][0].clone();
        inv[0].iter().zip(&one).all(|(v, o)| *v == q().mul(&c, o))
    };
    ensure(scalar, format!("Nichols16 invariants of dimension {}", inv.len()))?;

    let qq = q();
    let fun = group_algebra(&qq, &FiniteGroup::cyclic(2)).unwrap();
    let a = FinAlgebra::diagonal(&qq, 2);
    let swap = Matrix::from_i64(&qq, &[vec![0, 1], vec![1, 0]]);
    let co = ok(
        ModuleAction::new(&fun, &a, vec![Matrix::identity(&qq, 2), swap]).and_then(|m| m.to_coaction()),
        "Fun(Z/2)",
    )?;
    let b = ok(semisimple_bound(&co), "bound")?;
    ensure(
        b.dim_invariants * b.dim_h >= b.dim_a && b.verdict == BoundVerdict::Holds,
        format!("{b:?}"),
    )
}

/// Cofactor expansion of `det(tI − M)` with polynomial entries.
fn cofactor_char_poly(m: &Matrix) -> Poly {
    let f = m.field();
    let n = m.rows();
    let entry = |i: usize, j: usize| {
        let c = f.neg(m.get(i, j));
        if i == j {
            Poly::new(f, vec![c, f.one()])
        } else {
            Poly::constant(f, c)
        }
    };
    fn det(f: &Field, rows: &[usize], cols: &[usize], entry: &dyn Fn(usize, usize) -> Poly) -> Poly {
        if rows.is_empty() {
            return Poly::one(f);
        }
        let mut acc = Poly::zero(f);
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry(rows[0], c).mul(&det(f, &rows[1..], &rest, entry));
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    det(f, &idx, &idx, &entry)
}

fn criterion_11() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let q = q();
    let f7 = Field::prime(7).unwrap();
    for i in 0..100 {
        let n = rng.gen_range(1..=4);
        let field = if i % 2 == 0 { &q } else { &f7 };
        let vals: Vec<Value> = (0..n * n)
            .map(|_| {
                let num = field.from_i64(rng.gen_range(-6..7));
                let den = field.from_i64(if field == &q { rng.gen_range(1..4) } else { 1 });
                field.div(&num, &den).unwrap()
            })
            .collect();
        let m = Matrix::from_vec(field, n, n, vals);
        let chi = ok(mat_char_poly(&m), "char poly")?;
        ensure(chi == cofactor_char_poly(&m), format!("matrix {i}: disagrees with cofactor expansion"))?;
        ensure(chi.eval_matrix(&m).is_zero(), format!("matrix {i}: χ(M) ≠ 0"))?;
    }
    ensure(start.elapsed() < Duration::from_secs(10), format!("took {:?}", start.elapsed()))
}

fn acceptance_criteria() -> bool {
    let criteria: Vec<(&str, fn() -> Check)> = vec![
        ("Taft end-to-end", criterion_1),
        ("coaction bimodules are Galois", criterion_2),
        ("minimal and characteristic polynomials", criterion_3),
        ("classification of Galois bimodules", criterion_4),
        ("characteristic p", criterion_5),
        ("split analysis and base change", criterion_6),
        ("quasi-Galois round trip and positivity", criterion_7),
        ("Morita reduction and divisibility", criterion_8),
        ("Hecke idempotents and associativity", criterion_9),
        ("counterexamples", criterion_10),
        ("characteristic polynomial oracle", criterion_11),
    ];
    let results: Vec<Check> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                let f = *f;
                s.spawn(move || {
                    std::panic::catch_unwind(f).unwrap_or_else(|e| {
                        let msg = e
                            .downcast_ref::<String>()
                            .cloned()
                            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                            .unwrap_or_default();
                        Err(format!("panicked: {msg}"))
                    })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (k, ((name, _), r)) in criteria.iter().zip(&results).enumerate() {
        match r {
            Ok(()) => println!("criterion {:>2} PASS  {name}", k + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    failed == 0
}

// Runs without the libtest harness so the per-criterion lines are always shown.
fn main() -> std::process::ExitCode {
    if acceptance_criteria() {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
