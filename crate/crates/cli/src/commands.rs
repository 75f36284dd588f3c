//! Implementations of the ten subcommands. Each returns a [`Report`] on
//! success; an `Err(String)` means the input itself was invalid (exit 2).

use crate::format::{int_str, parse_rat, poly_json, rat_str, value_class_set_json};
use crate::mapspec::load_maps;
use crate::polyparse::parse_poly;
use crate::report::{Report, Status};
use crate::workers::{run_partitioned, worker_count};
use decic_core::arith::{Field, Int, Rat};
use decic_core::elliptic::{torsion_points, PrimitiveTriple, WeierstrassCurve};
use decic_core::modular::{twist_cover, xe_model, xe_to_x_delta};
use decic_core::moebius::{transport_map, two_torsion_data, TransportError};
use decic_core::numfield::{fingerprint, ramification_profile, PrimeStatus};
use decic_core::obstruction::{obstruction_test, primitive_j_classes, Verdict, Witness};
use decic_core::padic::{newton_polygon, value_classes};
use decic_core::search::{
    genus2_point_search_d_slice, reference_triples, search_primitive_c_slice, verify_triple,
    Genus2Curve, SearchWindow,
};
use num_traits::Signed;
use serde_json::{json, Value};

const MAX_DEPTH: u32 = 64;
const MAX_M: u32 = 12;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<(), String> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(format!("--p {p}: not a prime"))
    }
}

fn check_precision(m: u32, depth: u32) -> Result<(), String> {
    if m == 0 || m > MAX_M {
        return Err(format!("--m {m}: must be in 1..={MAX_M}"));
    }
    if depth > MAX_DEPTH {
        return Err(format!("--depth {depth}: must be at most {MAX_DEPTH}"));
    }
    Ok(())
}

fn triple_json(t: &PrimitiveTriple) -> Value {
    json!({"a": int_str(t.a()), "b": int_str(t.b()), "c": int_str(t.c())})
}

fn sort_triples(v: &mut Vec<PrimitiveTriple>) {
    v.sort_by(|s, t| {
        s.c()
            .cmp(t.c())
            .then(s.b().cmp(t.b()))
            .then(s.a().cmp(t.a()))
    });
    v.dedup();
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

pub fn cmd_search(z_bound: u64, y_bound: u64) -> Result<Report, String> {
    if z_bound > 100 || y_bound > 10_000_000 {
        return Err("search window too large (z <= 100, y <= 10^7)".into());
    }
    let mut report = Report::new("search");
    report.param("z_bound", z_bound).param("y_bound", y_bound);
    let window = SearchWindow::new(z_bound, y_bound);
    let cs: Vec<i64> = (-(z_bound as i64)..=z_bound as i64).collect();
    let mut found = run_partitioned(worker_count(), &cs, |slice| {
        search_primitive_c_slice(&window, slice)
    });
    sort_triples(&mut found);

    // The embedded reference list is the complete set of primitive
    // solutions; inside any window the search must reproduce its
    // restriction exactly.
    let mut expected: Vec<PrimitiveTriple> = reference_triples()
        .into_iter()
        .filter(|t| {
            t.c().abs() <= Int::from(z_bound) && t.b().abs() <= Int::from(y_bound)
        })
        .collect();
    sort_triples(&mut expected);
    let matches = found == expected;
    report.check(
        "matches-reference-list",
        matches,
        format!("{} found, {} expected in window", found.len(), expected.len()),
    );
    let all_verify = found.iter().all(|t| verify_triple(t).all_pass());
    report.check("all-found-triples-verify", all_verify, format!("{} triples", found.len()));
    report.data = json!({
        "triples": found.iter().map(triple_json).collect::<Vec<_>>(),
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

pub fn cmd_verify(triple: &str) -> Result<Report, String> {
    let parts: Vec<&str> = triple.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("--triple `{triple}`: expected a,b,c"));
    }
    let nums: Vec<Int> = parts
        .iter()
        .map(|s| {
            s.trim()
                .parse::<Int>()
                .map_err(|_| format!("--triple `{triple}`: `{s}` is not an integer"))
        })
        .collect::<Result<_, _>>()?;
    let (a, b, c) = (nums[0].clone(), nums[1].clone(), nums[2].clone());
    let mut report = Report::new("verify");
    report.param("triple", format!("{a},{b},{c}"));
    match PrimitiveTriple::new(a.clone(), b.clone(), c.clone()) {
        Ok(t) => {
            let r = verify_triple(&t);
            report.check("equation", r.equation, "a^2 + b^3 = c^10");
            report.check("primitive", r.primitive, "gcd(a, b, c) = 1");
            report.check("pairwise-coprime", r.pairwise_coprime, "pairwise gcds are 1");
            if r.frey_defined {
                report.check("delta-identity", r.delta_identity, "Delta = -12^3 c^10");
                report.check("j-identity", r.j_identity, "j = 12^3 b^3 / c^10");
                report.check(
                    "j-offset-identity",
                    r.j_offset_identity,
                    "j - 1728 = -12^3 a^2 / c^10",
                );
                report.check(
                    "minus3-square",
                    r.minus3_square,
                    "-3(j - 1728) is a rational square",
                );
            } else {
                report.finding(
                    "frey-curve",
                    Status::Pass,
                    "c = 0: singular Frey model, identity checks skipped",
                );
            }
            report.data = json!({
                "triple": triple_json(&t),
                "frey_defined": r.frey_defined,
                "j": r.j.as_ref().map(rat_str),
            });
        }
        Err(e) => {
            let equation = &a * &a + &b * &b * &b == c.pow(10);
            report.check("equation", equation, "a^2 + b^3 = c^10");
            report.check("primitive", false, format!("rejected: {e}"));
            report.data = json!({
                "triple": {"a": int_str(&a), "b": int_str(&b), "c": int_str(&c)},
                "frey_defined": false,
                "j": Value::Null,
            });
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// torsion
// ---------------------------------------------------------------------------

pub fn cmd_torsion(delta: &str) -> Result<Report, String> {
    let delta = parse_rat(delta).map_err(|e| format!("--delta: {e}"))?;
    if Field::is_zero(&delta) {
        return Err("--delta: twist parameter must be nonzero".into());
    }
    let model = xe_model(&delta).map_err(|e| format!("--delta: {e}"))?;
    let mut report = Report::new("torsion");
    report.param("delta", rat_str(&delta));
    let group = torsion_points(model.curve());
    let mut on_curve = true;
    let mut order_kills = true;
    let mut points_json: Vec<Value> = Vec::new();
    let mut finite_js: Vec<Rat> = Vec::new();
    let mut has_cusp_image = false;
    for p in &group.points {
        on_curve &= model.curve().contains(p);
        order_kills &= model
            .curve()
            .mul(group.order as u64, p)
            .map(|q| q.is_infinity())
            .unwrap_or(false);
        match p.xy() {
            None => {
                points_json.push(json!("infinity"));
                has_cusp_image = true;
            }
            Some((x, y)) => {
                // Model coordinates: X = delta t, Y = delta^2 y.
                let t = x / &delta;
                let ym = y / (&delta * &delta);
                points_json.push(json!({"t": rat_str(&t), "y": rat_str(&ym)}));
                if Field::is_zero(&t) {
                    has_cusp_image = true;
                } else {
                    let z = xe_to_x_delta(&model, &t, &ym)
                        .map_err(|e| format!("internal: {e}"))?;
                    let j = twist_cover(&delta, &z).map_err(|e| format!("internal: {e}"))?;
                    finite_js.push(j);
                }
            }
        }
    }
    finite_js.sort();
    finite_js.dedup();
    let mut j_images: Vec<Value> = finite_js.iter().map(|j| json!(rat_str(j))).collect();
    if has_cusp_image {
        j_images.push(json!("inf"));
    }
    report.check("points-on-curve", on_curve, format!("{} points", group.points.len()));
    report.check(
        "order-annihilates",
        order_kills,
        format!("n * P = O for n = {}", group.order),
    );
    report.finding(
        "torsion-order",
        Status::Pass,
        format!("order {}", group.order),
    );
    report.data = json!({
        "delta": rat_str(&delta),
        "delta_class": rat_str(model.delta_class()),
        "order": group.order,
        "points": points_json,
        "j_images": j_images,
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// local-test
// ---------------------------------------------------------------------------

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Class(c) => json!({"kind": "class", "v": c.v, "u": c.u.to_string()}),
        Witness::Zero => json!({"kind": "zero"}),
        Witness::Infinity => json!({"kind": "infinity"}),
    }
}

pub fn cmd_local_test(p: u64, map: &str, m: u32, depth: u32) -> Result<Report, String> {
    check_prime(p)?;
    check_precision(m, depth)?;
    let maps = load_maps(map)?;
    let mut report = Report::new("local-test");
    report
        .param("p", p)
        .param("map", map)
        .param("m", m)
        .param("depth", depth);
    let mut reports_json: Vec<Value> = Vec::new();
    for named in &maps {
        let r = obstruction_test(&named.map, p, m, depth)
            .map_err(|e| format!("obstruction test failed: {e}"))?;
        let (verdict, status) = match r.verdict {
            Verdict::Disjoint => ("disjoint", Status::Pass),
            Verdict::Intersecting => ("intersecting", Status::Pass),
            Verdict::Inconclusive => ("inconclusive", Status::Inconclusive),
        };
        report.finding(
            &format!("verdict[{}]", named.name),
            status,
            format!("{verdict}, {} witness(es)", r.witnesses.len()),
        );
        reports_json.push(json!({
            "map": named.name,
            "p": r.p,
            "m": r.m,
            "verdict": verdict,
            "witnesses": r.witnesses.iter().map(witness_json).collect::<Vec<_>>(),
            "map_image": value_class_set_json(&r.map_image),
            "triple_image": value_class_set_json(&r.triple_image),
        }));
    }
    report.data = json!({"reports": reports_json});
    Ok(report)
}

// ---------------------------------------------------------------------------
// j-image
// ---------------------------------------------------------------------------

pub fn cmd_j_image(p: u64, m: u32, depth: u32) -> Result<Report, String> {
    check_prime(p)?;
    check_precision(m, depth)?;
    let set =
        primitive_j_classes(p, m, depth).map_err(|e| format!("image computation failed: {e}"))?;
    let mut report = Report::new("j-image");
    report.param("p", p).param("m", m).param("depth", depth);
    let mut valuations: Vec<i64> = set.classes().map(|c| c.v).collect();
    valuations.sort();
    valuations.dedup();
    report.check(
        "image-complete",
        set.is_complete(),
        "every primitive-triple j-value is covered",
    );
    report.finding(
        "explicit-valuations",
        Status::Pass,
        format!("{valuations:?}"),
    );
    report.data = json!({"classes": value_class_set_json(&set)});
    Ok(report)
}

// ---------------------------------------------------------------------------
// identities
// ---------------------------------------------------------------------------

pub fn cmd_identities() -> Result<Report, String> {
    let mut report = Report::new("identities");
    report.check(
        "offset-identity",
        decic_core::modular::check_offset_identity(),
        "(t^2+250t+3125)^3 - (t^2-500t-15625)^2 (t^2+22t+125) = 1728 t^5",
    );
    let mut triples_json: Vec<Value> = Vec::new();
    for t in reference_triples() {
        let r = verify_triple(&t);
        report.check(
            &format!("frey-identities[{},{},{}]", t.a(), t.b(), t.c()),
            r.all_pass(),
            if r.frey_defined {
                "Delta, j and offset identities plus -3-square test"
            } else {
                "c = 0: equation and coprimality only"
            },
        );
        triples_json.push(json!({
            "triple": triple_json(&t),
            "all_pass": r.all_pass(),
            "j": r.j.as_ref().map(rat_str),
        }));
    }
    report.data = json!({"triples": triples_json});
    Ok(report)
}

// ---------------------------------------------------------------------------
// fields
// ---------------------------------------------------------------------------

fn status_str(s: &PrimeStatus) -> &'static str {
    match s {
        PrimeStatus::Ramified => "ramified",
        PrimeStatus::Unramified => "unramified",
        PrimeStatus::Undetermined => "undetermined",
    }
}

pub fn cmd_fields(poly: &str, bound: u64) -> Result<Report, String> {
    let f = parse_poly(poly).map_err(|e| format!("--poly: {e}"))?;
    if bound < 2 || bound > 100_000 {
        return Err("--bound: must be in 2..=100000".into());
    }
    let profile = ramification_profile(&f).map_err(|e| format!("--poly: {e}"))?;
    let mut report = Report::new("fields");
    report.param("poly", poly).param("bound", bound);
    let statuses: Vec<Value> = profile
        .statuses()
        .iter()
        .map(|(p, s)| json!({"p": int_str(p), "status": status_str(s)}))
        .collect();
    let ramified: Vec<String> = profile
        .ramified_primes()
        .iter()
        .map(int_str)
        .collect();
    let undetermined: Vec<String> = profile
        .statuses()
        .iter()
        .filter(|(_, s)| *s == PrimeStatus::Undetermined)
        .map(|(p, _)| int_str(p))
        .collect();
    report.finding(
        "ramified-primes",
        if undetermined.is_empty() {
            Status::Pass
        } else {
            Status::Inconclusive
        },
        if undetermined.is_empty() {
            format!("{{{}}}", ramified.join(", "))
        } else {
            format!(
                "{{{}}} with undetermined {{{}}}",
                ramified.join(", "),
                undetermined.join(", ")
            )
        },
    );
    let fp = fingerprint(&f, bound).map_err(|e| format!("--poly: {e}"))?;
    report.finding(
        "splitting-fingerprint",
        Status::Pass,
        format!("{} good primes below {bound}", fp.primes().len()),
    );
    report.data = json!({
        "poly": poly_json(&f),
        "discriminant": rat_str(profile.discriminant()),
        "ramification": statuses,
        "fingerprint": {
            "primes": fp.primes(),
            "shapes": fp.shapes(),
        },
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// genus2
// ---------------------------------------------------------------------------

pub fn cmd_genus2(k: &str, height: u64) -> Result<Report, String> {
    let k: Int = k
        .trim()
        .parse()
        .map_err(|_| format!("--k `{k}`: not an integer"))?;
    if height > 1_000_000 {
        return Err("--height: must be at most 10^6".into());
    }
    let curve = Genus2Curve::new(k.clone()).map_err(|e| format!("--k: {e}"))?;
    let mut report = Report::new("genus2");
    report.param("k", int_str(&k)).param("height", height);
    let h = height as i64;
    let ds: Vec<i64> = (1..).take_while(|d| d * d <= h).collect();
    let mut points = run_partitioned(worker_count(), &ds, |slice| {
        genus2_point_search_d_slice(&curve, height, slice)
    });
    points.sort();
    points.dedup();
    let all_on = points.iter().all(|(x, y)| curve.contains(x, y));
    report.check("points-on-curve", all_on, format!("{} points", points.len()));
    report.data = json!({
        "points": points
            .iter()
            .map(|(x, y)| json!({"x": rat_str(x), "y": rat_str(y)}))
            .collect::<Vec<_>>(),
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// moebius
// ---------------------------------------------------------------------------

pub fn cmd_moebius(curve: &str, map: Option<&str>) -> Result<Report, String> {
    let f = parse_poly(curve).map_err(|e| format!("--curve: {e}"))?;
    let coeffs = f.coeffs();
    let valid = f.degree() == Some(3)
        && coeffs[3] == decic_core::arith::rat(1)
        && Field::is_zero(&coeffs[2]);
    if !valid {
        return Err(format!(
            "--curve `{curve}`: expected a monic depressed cubic x^3 + a x + b"
        ));
    }
    let (a, b) = (coeffs[1].clone(), coeffs[0].clone());
    let e = WeierstrassCurve::new(a, b)
        .map_err(|e| format!("--curve `{curve}`: singular model: {e}"))?;
    let mut report = Report::new("moebius");
    report.param("curve", curve);
    let tt = two_torsion_data(&e).map_err(|e| format!("two-torsion analysis failed: {e}"))?;
    report.finding(
        "two-torsion-field",
        Status::Pass,
        format!("splitting field degree {}", tt.degree()),
    );
    let syms = tt.j_symmetric_functions();
    report.check(
        "isogenous-j-symmetric-functions-rational",
        syms.is_some(),
        "e1, e2, e3 of the three 2-isogenous j-invariants lie in Q",
    );
    let syms_json = syms.as_ref().map(|(e1, e2, e3)| {
        json!({"e1": rat_str(e1), "e2": rat_str(e2), "e3": rat_str(e3)})
    });
    let mut descended_json = Value::Null;
    if let Some(spec) = map {
        let named = load_maps(spec)?;
        if named.len() != 1 {
            return Err(format!("--map `{spec}`: expands to {} maps, need exactly one", named.len()));
        }
        let g = &named[0].map;
        let ctx = tt.roots()[0].zero_like();
        let g_ext = g
            .map_coeffs(|q| decic_core::arith::Field::from_rat_like(&ctx, q))
            .map_err(|e| format!("--map: {e}"))?;
        let sources = [
            decic_core::arith::ProjPoint::affine(tt.roots()[0].clone()),
            decic_core::arith::ProjPoint::affine(tt.roots()[1].clone()),
            decic_core::arith::ProjPoint::affine(tt.roots()[2].clone()),
        ];
        let js = tt.j_invariants();
        let targets = [
            decic_core::arith::ProjPoint::affine(js[0].clone()),
            decic_core::arith::ProjPoint::affine(js[1].clone()),
            decic_core::arith::ProjPoint::affine(js[2].clone()),
        ];
        match transport_map(&g_ext, &sources, &targets) {
            Ok(desc) => {
                report.finding(
                    "descended-model-rational",
                    Status::Pass,
                    "g composed with the interpolated Moebius inverse has Q-coefficients",
                );
                descended_json = json!({
                    "num": poly_json(desc.num()),
                    "den": poly_json(desc.den()),
                });
            }
            Err(TransportError::NotRational {
                numerator, index, ..
            }) => {
                report.check(
                    "descended-model-rational",
                    false,
                    format!(
                        "irrational {} coefficient at degree {index}",
                        if numerator { "numerator" } else { "denominator" }
                    ),
                );
            }
            Err(TransportError::Arith(e)) => {
                report.check("descended-model-rational", false, format!("{e}"));
            }
        }
    }
    report.data = json!({
        "cubic": poly_json(&f),
        "splitting_degree": tt.degree(),
        "j_symmetric_functions": syms_json,
        "descended": descended_json,
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// padic
// ---------------------------------------------------------------------------

pub fn cmd_padic(poly: &str, p: u64, m: u32, depth: u32) -> Result<Report, String> {
    check_prime(p)?;
    check_precision(m, depth)?;
    let f = parse_poly(poly).map_err(|e| format!("--poly: {e}"))?;
    if f.is_zero() {
        return Err("--poly: the zero polynomial has no Newton polygon".into());
    }
    let mut report = Report::new("padic");
    report
        .param("poly", poly)
        .param("p", p)
        .param("m", m)
        .param("depth", depth);
    let np = newton_polygon(&f, p).map_err(|e| format!("--poly: {e}"))?;
    let slopes: Vec<Value> = np
        .segments()
        .iter()
        .map(|(s, len)| json!({"slope": rat_str(s), "length": len}))
        .collect();
    let root_count: usize = np.root_valuations().iter().map(|(_, k)| k).sum();
    report.check(
        "newton-polygon",
        root_count == f.degree().unwrap_or(0),
        format!("{} segment(s), {} root(s) with valuation", slopes.len(), root_count),
    );
    let set = value_classes(&f, p, m, depth);
    report.finding(
        "value-classes",
        Status::Pass,
        format!("{} explicit class(es)", set.classes().count()),
    );
    report.data = json!({
        "poly": poly_json(&f),
        "newton_polygon": {
            "vertices": np
                .vertices()
                .iter()
                .map(|(i, v)| json!([i, rat_str(v)]))
                .collect::<Vec<_>>(),
            "slopes": slopes,
        },
        "classes": value_class_set_json(&set),
    });
    Ok(report)
}
