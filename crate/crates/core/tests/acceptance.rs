//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use torified::counting::{counting_polynomial, eval_counting, oracle_point_count, verify_counting, zeta};
use torified::family::{builtin_corpus, singular_cone, Family};
use torified::functor::{
    alpha, beta, cc_cardinality_check, discover_relations, enumerate_monoid_homs, soule_count_by_faces,
    unit_characters, BinomialRelation, CyclicMonoidWithZero, FiniteAbelianGroup,
};
use torified::lattice::{dual_cone, hilbert_basis, standard_fan, Cone, FanKind};
use torified::monoid::{dscheme_of_fan, monoid_of_cone};
use torified::torification::{delta_vector, product, torify_affine_space, torify_toric};

type Check = Result<(), String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, Option<u64>, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn qs(xs: &[i64]) -> Vec<BigInt> {
    big(xs)
}

/// Points that a full enumeration may list before falling back to counting.
const ENUMERATION_BUDGET: u64 = 100_000;

fn gr24() -> Check {
    let t = Family::Grassmannian(2, 4).torify().map_err(|e| e.to_string())?;
    let d = delta_vector(&t);
    ensure(d == [6, 12, 11, 5, 1], || format!("delta {d:?}"))
}

fn sl2() -> Check {
    let family = Family::Sl(2);
    let t = family.torify().map_err(|e| e.to_string())?;
    let d = delta_vector(&t);
    ensure(d == [0, 2, 3, 1], || format!("delta {d:?}"))?;
    let n = counting_polynomial(&t);
    ensure(n.mono() == big(&[0, -1, 0, 1]), || {
        format!("N(q) coefficients {:?}", n.mono())
    })?;
    let report = verify_counting(&t, &family, &qs(&[2, 3, 4, 5, 7, 8, 9])).map_err(|e| e.to_string())?;
    ensure(report.all_agree(), || format!("mismatches {:?}", report.mismatches()))
}

fn oracle_suite() -> Check {
    let q = qs(&[2, 3, 4, 5, 7, 8, 9, 11, 13]);
    let corpus = builtin_corpus();
    for family in &corpus {
        let t = family.torify().map_err(|e| format!("{family}: {e}"))?;
        let n = counting_polynomial(&t);
        for q in &q {
            let counted = eval_counting(&n, q);
            let oracle = oracle_point_count(family, q).map_err(|e| e.to_string())?;
            ensure(counted == oracle, || {
                format!("{family} at q={q}: {counted} vs {oracle}")
            })?;
        }
    }
    ensure(corpus.len() >= 60, || format!("only {} families", corpus.len()))
}

fn delta_independence() -> Check {
    let direct = delta_vector(&torify_affine_space(2));
    let a1 = torify_affine_space(1);
    let prod = delta_vector(&product(&a1, &a1));
    let toric = delta_vector(&torify_toric(&standard_fan(FanKind::AffineSpace, 2)).map_err(|e| e.to_string())?);
    ensure(direct == prod && prod == toric && direct == [1, 2, 1], || {
        format!("A^2: direct {direct:?}, product {prod:?}, toric {toric:?}")
    })?;
    for n in 0..=6 {
        for k in 0..=n {
            let parts: Vec<usize> = [k, n - k].into_iter().filter(|&p| p > 0).collect();
            let flag = Family::Flag(parts).torify().map_err(|e| e.to_string())?;
            let gr = Family::Grassmannian(k, n).torify().map_err(|e| e.to_string())?;
            ensure(delta_vector(&flag) == delta_vector(&gr), || {
                format!(
                    "flag({k},{}) {:?} vs Gr({k},{n}) {:?}",
                    n - k,
                    delta_vector(&flag),
                    delta_vector(&gr)
                )
            })?;
        }
    }
    Ok(())
}

fn zeta_formula() -> Check {
    let cases = [
        (Family::Point, "1/s"),
        (Family::Gm(1), "s/(s-1)"),
        (Family::Projective(1), "1/(s(s-1))"),
        (Family::Affine(1), "1/(s-1)"),
        (Family::Projective(2), "1/(s(s-1)(s-2))"),
    ];
    for (family, want) in cases {
        let z = zeta(&counting_polynomial(&family.torify().map_err(|e| e.to_string())?));
        ensure(z.to_string() == want, || format!("{family}: {z}, expected {want}"))?;
    }
    for family in builtin_corpus() {
        let n = counting_polynomial(&family.torify().map_err(|e| e.to_string())?);
        let sum: BigInt = n.mono().iter().sum();
        let delta0 = n.delta().first().cloned().unwrap_or_default();
        ensure(sum == delta0, || {
            format!("{family}: sum of a_i {sum} but delta_0 {delta0}")
        })?;
        ensure(zeta(&n).exponent_sum() == delta0, || {
            format!("{family}: zeta exponents")
        })?;
    }
    Ok(())
}

fn cc_cardinality() -> Check {
    let groups = FiniteAbelianGroup::all_up_to(12);
    ensure(groups.len() == 17, || format!("{} groups of order <= 12", groups.len()))?;
    let mut enumerated = 0;
    for family in builtin_corpus() {
        let t = family.torify().map_err(|e| e.to_string())?;
        for g in &groups {
            let c = cc_cardinality_check(&t, g, ENUMERATION_BUDGET).map_err(|e| e.to_string())?;
            ensure(c.agrees, || {
                format!(
                    "{family} over {:?}: {} points, N = {}",
                    g.cyclic_orders(),
                    c.points,
                    c.counting_value
                )
            })?;
            enumerated += usize::from(c.enumerated);
        }
    }
    ensure(enumerated > 0, || "nothing was enumerated".into())
}

fn cone(n: usize, rays: &[&[i64]]) -> Cone {
    Cone::new(n, &rays.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).expect("valid cone")
}

fn alpha_beta() -> Check {
    let singular = singular_cone();
    let a = monoid_of_cone(&singular).map_err(|e| e.to_string())?;
    ensure(a.generators() == [vec![0, 1], vec![1, 0], vec![2, -1]], || {
        format!("generators {:?}", a.generators())
    })?;
    let rels = discover_relations(&a, 6).map_err(|e| e.to_string())?;
    let expected = BinomialRelation {
        lhs: vec![1, 0, 1],
        rhs: vec![0, 2, 0],
    };
    ensure(rels == [expected], || format!("relations {rels:?}"))?;

    let mut cones = vec![
        cone(1, &[&[1]]),
        cone(2, &[&[1, 0], &[0, 1]]),
        cone(2, &[&[1, 0], &[1, 1]]),
        cone(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        cone(3, &[&[1, 0, 0], &[0, 1, 0]]),
        cone(3, &[&[1, 1, 1]]),
        cone(3, &[&[1, 0, 0], &[1, 1, 0], &[1, 1, 1]]),
    ];
    cones.push(singular.clone());
    for c in &cones {
        let a = monoid_of_cone(c).map_err(|e| e.to_string())?;
        for m in 1..=6 {
            let target = CyclicMonoidWithZero::new(m).map_err(|e| e.to_string())?;
            let homs = enumerate_monoid_homs(&a, &target, 1_000_000).map_err(|e| format!("{c}, m={m}: {e}"))?;
            let by_faces = soule_count_by_faces(&a, m).map_err(|e| e.to_string())?;
            ensure(BigUint::from(homs.len()) == by_faces, || {
                format!("{c}, m={m}: {} homs, {by_faces} by faces", homs.len())
            })?;
            for h in &homs {
                let chi = beta(&a, &target, h).map_err(|e| e.to_string())?;
                let back = alpha(&a, &target, &chi).map_err(|e| e.to_string())?;
                ensure(&back == h, || format!("{c}, m={m}: {h:?} does not round-trip"))?;
            }
            let chars = unit_characters(&a, &target).map_err(|e| e.to_string())?;
            ensure(chars.len() == homs.len(), || {
                format!("{c}, m={m}: {} characters", chars.len())
            })?;
            if c == &singular && m == 1 {
                ensure(homs.len() == 4, || format!("singular cone at m=1: {} homs", homs.len()))?;
            }
        }
    }
    Ok(())
}

fn deitmar() -> Check {
    for family in builtin_corpus() {
        let Family::Toric(fan) = family else { continue };
        let ds = dscheme_of_fan(&fan).map_err(|e| e.to_string())?;
        let n = fan.ambient_dim();
        ensure(ds.points.len() == fan.len(), || {
            format!("{} points for {} cones", ds.points.len(), fan.len())
        })?;
        for p in &ds.points {
            let c = &fan.cones()[p.cone];
            ensure(p.rank == n - c.dim(), || format!("{c}: rank {}", p.rank))?;
            ensure(p.local_monoid.unit_basis().len() == p.rank, || {
                format!("{c}: unit rank")
            })?;
        }
        for (i, a) in fan.cones().iter().enumerate() {
            for (j, b) in fan.cones().iter().enumerate() {
                let face = i != j && a.is_face_of(b);
                ensure(ds.specialization.contains(&(i, j)) == face, || {
                    format!("specialization {a} -> {b}")
                })?;
            }
        }
        ensure(ds.is_connected(), || "disconnected".into())?;
    }
    Ok(())
}

fn hilbert_suite() -> Check {
    let corpus = common::corpus();
    ensure(corpus.len() >= 20, || format!("corpus has {} cones", corpus.len()))?;
    ensure(corpus.contains(&singular_cone()), || "singular cone missing".into())?;
    for c in &corpus {
        let mut hb = hilbert_basis(c).map_err(|e| e.to_string())?;
        hb.sort();
        ensure(hb == common::oracle_hilbert(c), || format!("{c}: Hilbert basis {hb:?}"))?;
        let a = monoid_of_cone(c).map_err(|e| e.to_string())?;
        for g in a.full_generators() {
            let ok = c
                .rays()
                .iter()
                .all(|r| r.iter().zip(&g).map(|(x, y)| x * y).sum::<i64>() >= 0);
            ensure(ok, || format!("{c}: {g:?} is not in the dual"))?;
        }
        if c.is_full_dimensional() {
            let mut gens = a.generators().to_vec();
            gens.sort();
            ensure(gens == common::oracle_dual_hilbert(c), || {
                format!("{c}: dual Hilbert basis {gens:?}")
            })?;
            let dd = dual_cone(c)
                .and_then(|d| d.into_cone())
                .and_then(|d| dual_cone(&d))
                .and_then(|d| d.into_cone())
                .map_err(|e| e.to_string())?;
            ensure(&dd == c, || format!("{c}: double dual {dd}"))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Gr(2,4) torification delta = (6,12,11,5,1)", Some(1), gr24),
        (
            "SL(2) Bruhat torification, N = q^3 - q, |SL2(F_q)| oracle",
            Some(1),
            sl2,
        ),
        ("oracle suite over all built-in families", Some(30), oracle_suite),
        (
            "delta-independence of A^2 and flag(k,n-k) = Gr(k,n)",
            None,
            delta_independence,
        ),
        ("zeta formula and sum of a_i = delta_0", None, zeta_formula),
        (
            "CC gadget cardinality over abelian groups of order <= 12",
            Some(10),
            cc_cardinality,
        ),
        (
            "Soule homs: face count, enumeration and alpha/beta round trip",
            Some(10),
            alpha_beta,
        ),
        ("monoid scheme points match cones, ranks and face order", None, deitmar),
        (
            "Hilbert basis minimality, dual membership, double dual",
            Some(5),
            hilbert_suite,
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = limit.is_some_and(|s| elapsed > Duration::from_secs(s));
        let limit_note = limit.map_or(String::new(), |s| format!(", limit {s}s"));
        let timing = format!("{:.3}s{limit_note}", elapsed.as_secs_f64());
        match (&outcome, over) {
            (Ok(()), false) => println!("PASS [{}] {name} ({timing})", i + 1),
            (Ok(()), true) => {
                failed += 1;
                println!("FAIL [{}] {name} ({timing}): time limit exceeded", i + 1);
            }
            (Err(msg), _) => {
                failed += 1;
                println!("FAIL [{}] {name} ({timing}): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
