use std::collections::BTreeMap;
use std::time::Instant;

use bwcert_core::bwspread::{self, LineParam};
use bwcert_core::cayley;
use bwcert_core::field::{classify_field, CubeRootProfile, FieldSpec};
use bwcert_core::idealprobe;
use bwcert_core::klein::{self, kappa, kappa_osculating};
use bwcert_core::projspace::KleinPoint;
use bwcert_core::Error;
use serde_json::{json, Value};

use crate::report::{Check, Report};

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub timings: bool,
}

/// Runs `f` and, with `--timings`, stamps the elapsed time on its check.
fn timed(opts: Options, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let mut c = f();
    if opts.timings {
        c.millis = Some(start.elapsed().as_millis() as u64);
    }
    c
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn certify(field: FieldSpec, seed: u64, samples: u64, opts: Options) -> Report {
    let regime = classify_field(field);
    let finite = field.is_finite();
    let char3 = field.characteristic() == 3;
    let mut checks = Vec::new();

    checks.push(timed(opts, || {
        let p = CubeRootProfile::of(field);
        // over GF(q), a nontrivial cube root of 1 exists iff cubing is not injective
        let agrees = !finite || p.nontrivial_unity_root.is_some() == !p.cubing_injective;
        Check::new(
            "cube_root_profile",
            "a nontrivial cube root of unity exists exactly when cubing is not injective",
            true,
            agrees,
        )
        .witness(&p.nontrivial_unity_root)
        .count("characteristic", p.characteristic)
        .count("cubing_injective", p.cubing_injective)
        .count("cubing_surjective", p.cubing_surjective)
    }));

    checks.push(timed(opts, || {
        let c = bwspread::certify_partial_spread(field, seed, samples);
        let replays = c.witness.as_ref().map(|w| w.replay(field));
        Check::new(
            "partial_spread",
            "O is pairwise skew iff X^2+X+1 has no root in K (char != 3)",
            regime.is_partial_spread(),
            c.passed && replays != Some(false),
        )
        .witness(&c.witness)
        .count("method", c.method)
        .count("lines", c.lines)
        .count("pairs_checked", c.pairs_checked)
        .count("meeting_pairs", c.meeting_pairs)
        .count("spot_checks", c.spot_checks)
        .count("witness_replays", replays)
    }));

    let mut cross_check = None;
    checks.push(timed(opts, || {
        let covering = bwspread::certify_covering(field);
        cross_check = Some((covering.incidence_agrees, covering.exact_partition));
        Check::new(
            "covering",
            "O covers every point iff char != 3 and every element is a cube",
            regime.is_covering(),
            covering.passed,
        )
        .witness(&covering.witness)
        .count("method", covering.method)
        .count("points_total", covering.points_total)
        .count("covered", covering.covered)
        .count("uncovered", covering.uncovered)
        .count("multiply_covered", covering.multiply_covered)
    }));

    if let Some((Some(agrees), partition)) = cross_check {
        checks.push(Check::new(
            "covering_cross_check",
            "solved line counts per point agree with direct incidence counts",
            true,
            agrees,
        )
        .count("exact_partition", partition));
    }

    checks.push(timed(opts, || match bwspread::certify_maximality(field) {
        Ok(m) => Check::new(
            "omega_cover",
            "every point of the plane X0 = 0 lies on a line of O, so O is maximal",
            true,
            m.passed,
        )
        .witness(&m.witness)
        .count("omega_points_checked", m.omega_points_checked),
        Err(_) => Check::skipped(
            "omega_cover",
            "every point of the plane X0 = 0 lies on a line of O, so O is maximal",
            "characteristic 3",
        ),
    }));

    if finite {
        let mut z_planes = (false, 0, 0);
        checks.push(timed(opts, || {
            let dual = bwspread::certify_dual_spread(field).expect("finite field");
            z_planes = (dual.z_surrogate_passed, dual.z_planes_total, dual.z_planes_covered);
            Check::new(
                "dual_spread",
                "every plane contains exactly one line of O iff O is a spread",
                regime.is_covering(),
                dual.passed,
            )
            .witness(&dual.witness_plane)
            .count("planes_total", dual.planes_total)
            .count("planes_with_exactly_one", dual.planes_with_exactly_one)
            .count("planes_with_none", dual.planes_with_none)
            .count("planes_with_several", dual.planes_with_several)
        }));
        checks.push(if char3 {
            Check::skipped(
                "z_planes_covered",
                "every plane through Z contains a line of O",
                "characteristic 3",
            )
        } else {
            Check::new(
                "z_planes_covered",
                "every plane through Z contains a line of O",
                true,
                z_planes.0,
            )
            .count("z_planes_total", z_planes.1)
            .count("z_planes_covered", z_planes.2)
        });
        checks.push(timed(opts, || {
            Check::new(
                "duality_fixes_o",
                "the duality x -> (x3,x2,x1,x0) maps O onto itself",
                true,
                bwspread::duality_fixes_o(field).expect("finite field"),
            )
        }));
    } else {
        let reason = "needs a finite field";
        checks.push(Check::skipped("dual_spread", "every plane contains exactly one line of O", reason));
        checks.push(Check::skipped("z_planes_covered", "every plane through Z contains a line of O", reason));
        checks.push(Check::skipped("duality_fixes_o", "the duality maps O onto itself", reason));
    }

    Report::new(
        "certify",
        field.to_string(),
        regime,
        params(&[("seed", json!(seed)), ("samples", json!(samples))]),
        checks,
    )
}

pub fn klein(field: FieldSpec, seed: u64, samples: u64, opts: Options) -> Report {
    let regime = classify_field(field);
    let parameters = params(&[("seed", json!(seed)), ("samples", json!(samples))]);
    const VARIETY: (&str, &str) = (
        "variety_equality",
        "V(k,h1,h2,h3) equals the Klein image of O plus the pencil L[Z,omega]",
    );
    const REGULUS: (&str, &str) = (
        "regulus_minus",
        "tangents along each generator g(1,s), with g_inf, form a regulus whose opposite contains g(1,s)",
    );
    const PROJECTION: (&str, &str) = (
        "projection_through_cperp",
        "projecting kappa(t(s,u2)) from C-perp onto B gives (1,3s,0,3s^2,s^3,0)",
    );
    const CLOSED_FORM: (&str, &str) = (
        "kappa_closed_form",
        "Plücker coordinates of each tangent match the closed form and satisfy k,h1,h2,h3",
    );
    if field.characteristic() == 3 {
        let checks = [VARIETY, REGULUS, PROJECTION, CLOSED_FORM]
            .iter()
            .map(|(n, c)| Check::skipped(n, c, "characteristic 3"))
            .collect();
        return Report::new("klein", field.to_string(), regime, parameters, checks);
    }

    let finite = field.is_finite();
    let pairs = if finite {
        let e: Vec<_> = field.elements().expect("finite").collect();
        e.iter()
            .flat_map(|a| e.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    } else {
        bwspread::sample_parameters(field, samples as usize, seed)
    };
    let mut checks = Vec::new();

    checks.push(timed(opts, || {
        if !finite {
            return Check::skipped(VARIETY.0, VARIETY.1, "needs a finite field");
        }
        let v = klein::verify_variety_equality(field).expect("finite, char != 3");
        let witness = v.only_in_variety.clone().or(v.only_in_image.clone());
        Check::new(VARIETY.0, VARIETY.1, true, v.passed)
            .witness(&witness)
            .count("candidates_scanned", v.candidates_scanned)
            .count("variety_points", v.variety_points)
            .count("image_points", v.image_points)
            .count("expected", v.expected)
    }));

    checks.push(timed(opts, || {
        if !finite {
            return Check::skipped(REGULUS.0, REGULUS.1, "needs a finite field");
        }
        let mut witness = None;
        let mut checked = 0u64;
        for s in field.elements().expect("finite") {
            checked += 1;
            let g = cayley::generator(&field.one(), &s).expect("nonzero");
            let ok = bwspread::regulus_minus(&s)
                .and_then(|r| bwspread::verify_regulus(&r))
                .map(|c| c.opposite.contains(&g))
                .unwrap_or(false);
            if !ok && witness.is_none() {
                witness = Some(s);
            }
        }
        Check::new(REGULUS.0, REGULUS.1, true, witness.is_none())
            .witness(&witness)
            .count("parameters_checked", checked)
    }));

    checks.push(timed(opts, || {
        let three = field.int(3);
        let witness = pairs.iter().find(|(s, u2)| {
            let want = KleinPoint::new([
                field.one(),
                &three * s,
                field.zero(),
                &three * &s.square(),
                s.cube(),
                field.zero(),
            ])
            .expect("Y01 = 1");
            klein::project_through_cperp(&kappa_osculating(s, u2)) != Ok(want)
        });
        Check::new(PROJECTION.0, PROJECTION.1, true, witness.is_none())
            .witness(&witness.map(|(a, b)| LineParam::tangent(a, b)))
            .count("parameters_checked", pairs.len())
    }));

    checks.push(timed(opts, || {
        let witness = pairs.iter().find(|(u1, u2)| {
            let y = kappa_osculating(u1, u2);
            y != kappa(&bwspread::osculating_tangent(u1, u2).line)
                || !klein::KleinForms::all_vanish(y.coords())
        });
        Check::new(CLOSED_FORM.0, CLOSED_FORM.1, true, witness.is_none())
            .witness(&witness.map(|(a, b)| LineParam::tangent(a, b)))
            .count("parameters_checked", pairs.len())
    }));

    Report::new("klein", field.to_string(), regime, parameters, checks)
}

pub fn char3(field: FieldSpec, opts: Options) -> Result<Report, Error> {
    let cong = klein::char3_congruence_check(field)?;
    let pencil = klein::osculating_plane_pencil_check(field)?;
    let checks = vec![
        timed(opts, || {
            Check::new(
                "parabolic_congruence",
                "lines with Klein image in Q ∩ D all meet n = V(X0,X2) and are exactly O plus L[Z,omega]",
                true,
                cong.passed,
            )
            .witness(&json!({
                "congruence": cong.congruence,
                "line_missing_n": cong.witness_line,
                "vertex": cong.vertex,
            }))
            .count("congruence_size", cong.congruence_size)
            .count("q_cap_d_points", cong.q_cap_d_points)
            .count("expected", cong.expected)
            .count("all_meet_n", cong.all_meet_n)
            .count("images_in_q_cap_d", cong.images_in_q_cap_d)
            .count("equals_o_union_pencil", cong.congruence_equals_o_union_pencil)
            .count("vertex_is_cone_vertex", cong.vertex_is_cone_vertex)
        }),
        timed(opts, || {
            Check::new(
                "osculating_plane_pencil",
                "every osculating plane of the generator cubic contains span{v1,v2} = D-perp",
                true,
                pencil.passed,
            )
            .witness(&pencil.witness)
            .count("parameters_checked", pencil.parameters_checked)
            .count("dperp_is_axis_span", pencil.dperp_is_axis_span)
        }),
    ];
    Ok(Report::new("char3", field.to_string(), classify_field(field), params(&[]), checks))
}

pub fn default_samples(degree: u32) -> usize {
    if degree >= 3 {
        120
    } else {
        60
    }
}

pub fn ideal(degree: u32, samples: usize, seed: u64, opts: Options) -> Result<Report, Error> {
    let field = FieldSpec::rationals();
    let probe = idealprobe::abgeschlossen_probe(degree, samples, seed)?;
    let evidence = idealprobe::nonalgebraicity_evidence(degree, samples, seed)?;
    let checks = vec![
        timed(opts, || {
            Check::new(
                "pencil_vanishing",
                "at these samples, every degree-d form vanishing on kappa(O) vanishes on the pencil image",
                true,
                probe.pencil_vanishing,
            )
            .witness(&probe.pencil_witness)
            .count("nullspace_dimension", probe.nullspace_dimension)
            .count("pencil_points_checked", probe.pencil_points_checked)
            .count("samples", probe.samples)
        }),
        timed(opts, || {
            Check::new(
                "known_forms_contained",
                "the sampled vanishing space contains k, h1, h2, h3 (and their multiples)",
                true,
                probe.contains_known_forms,
            )
            .count("known_forms_rank", probe.known_forms_rank)
        }),
        timed(opts, || {
            Check::new(
                "nonalgebraicity",
                "a pencil point outside kappa(O) satisfies every sampled vanishing form of degree <= d",
                true,
                evidence.passed,
            )
            .witness(&evidence.witness)
            .count("forms_checked", evidence.forms_checked)
            .count("witness_in_kappa_o", evidence.witness_in_kappa_o)
        }),
    ];
    Ok(Report::new(
        "ideal",
        field.to_string(),
        classify_field(field),
        params(&[("degree", json!(degree)), ("samples", json!(samples)), ("seed", json!(seed))]),
        checks,
    ))
}
