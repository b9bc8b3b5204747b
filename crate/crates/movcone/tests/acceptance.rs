//! Acceptance suite: one line per criterion, non-zero exit if any fails.

#[path = "../../movcone-core/tests/oracle/mod.rs"]
mod oracle;

use std::path::PathBuf;
use std::process::ExitCode;

use movcone::cli::{run, EXIT_COMPUTATION, EXIT_OK};
use movcone::{cross_section, load_graph};
use movcone_core::cone::rank;
use movcone_core::flip::{enumerate_pmc_sequences, verify_flip};
use movcone_core::pipeline::{crosscheck_bdpp, eq_for_variety, moving_cone, moving_cone_threefold};
use movcone_core::{corpus, Cone, Error, ModelGraph, Rational, RationalVector};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn v(c: &[i64]) -> RationalVector {
    RationalVector::from_ints(c.iter().copied())
}

fn sorted(mut vs: Vec<RationalVector>) -> Vec<RationalVector> {
    vs.sort();
    vs
}

fn corpus_file(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name).to_string_lossy().into_owned()
}

fn bundle_graph() -> Result<ModelGraph, String> {
    load_graph(corpus_file("bundle_blowup.json")).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mori_nef_duality() -> Outcome {
    let mori = Cone::from_generators(3, &[v(&[1, 0, 0]), v(&[0, 0, 1]), v(&[0, 1, -1])]).map_err(|e| e.to_string())?;
    let expected = sorted(vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 1, 1])]);
    let dual = mori.dual();
    ensure(dual.extreme_rays() == expected.as_slice() && dual.is_pointed(), || {
        format!("dual rays {:?}", dual.extreme_rays().iter().map(ToString::to_string).collect::<Vec<_>>())
    })?;
    let nef = bundle_graph()?.root_model().nef_cone().map_err(|e| e.to_string())?;
    ensure(nef == dual, || "corpus nef cone differs".into())?;
    Ok("dual of ⟨γ,ν,η⟩ = ⟨Γ,Λ,Λ+E⟩".into())
}

fn equation_set() -> Outcome {
    let g = bundle_graph()?;
    let eq = eq_for_variety(&g, "X").map_err(|e| e.to_string())?;
    // Λ, Γ, E, Γ−E, Λ+E, Λ−Γ+E
    let expected =
        sorted(vec![v(&[0, 1, 0]), v(&[1, 0, 0]), v(&[0, 0, 1]), v(&[1, 0, -1]), v(&[0, 1, 1]), v(&[-1, 1, 1])]);
    ensure(eq.classes() == expected, || {
        format!("got {:?}", eq.classes().iter().map(ToString::to_string).collect::<Vec<_>>())
    })?;
    Ok("six classes".into())
}

fn moving_cone_rays() -> Outcome {
    let g = bundle_graph()?;
    let mov = moving_cone(&g, "X").map_err(|e| e.to_string())?;
    // λ, λ+γ, γ+ν
    let expected = sorted(vec![v(&[0, 1, 0]), v(&[1, 1, 0]), v(&[1, 0, 1])]);
    ensure(mov.extreme_rays() == expected.as_slice() && mov.lineality_basis().is_empty(), || {
        format!("got {:?}", mov.extreme_rays().iter().map(ToString::to_string).collect::<Vec<_>>())
    })?;
    Ok("⟨λ, λ+γ, γ+ν⟩".into())
}

fn sequences() -> Outcome {
    let g = bundle_graph()?;
    let all = enumerate_pmc_sequences(&g, "X", None).map_err(|e| e.to_string())?;
    ensure(all.len() == 2, || format!("{} sequences", all.len()))?;
    for ray in ["nu", "gamma"] {
        let seqs = enumerate_pmc_sequences(&g, "X", Some(ray)).map_err(|e| e.to_string())?;
        ensure(seqs.len() == 1 && seqs[0].len() == 1, || format!("{ray}: {seqs:?}"))?;
        ensure(seqs[0].steps[0].ray == ray, || format!("{ray}: starts with {}", seqs[0].steps[0].ray))?;
    }
    Ok("one sequence of length 1 per small ray".into())
}

fn flip_axioms() -> Outcome {
    let g = bundle_graph()?;
    let root = g.root_model();
    let mut mutations = 0;
    for ray in ["nu", "gamma"] {
        let flip = root.ray(ray).and_then(|r| r.flip.clone()).ok_or(format!("{ray} has no flip"))?;
        let target = g.model(&flip.target_model).map_err(|e| e.to_string())?;
        let report = verify_flip(root, &flip, target);
        ensure(report.is_empty(), || format!("{ray}: {report:?}"))?;

        // Every nonzero entry of the matrix and of the flipped curve.
        for i in 0..flip.pushforward.rows() {
            for j in 0..flip.pushforward.cols() {
                if flip.pushforward.entry(i, j).is_zero() {
                    continue;
                }
                let mut rows = flip.pushforward.row_vectors();
                let mut coords = rows[i].clone().into_coords();
                coords[j] = -coords[j].clone();
                rows[i] = RationalVector::new(coords);
                let mut bad = flip.clone();
                bad.pushforward = movcone_core::LinearMap::from_rows(rows).map_err(|e| e.to_string())?;
                ensure(!verify_flip(root, &bad, target).is_empty(), || format!("{ray}: matrix ({i},{j}) unnoticed"))?;
                mutations += 1;
            }
        }
        for k in 0..flip.flipped_curve.dim() {
            if flip.flipped_curve[k].is_zero() {
                continue;
            }
            let mut coords = flip.flipped_curve.clone().into_coords();
            coords[k] = -coords[k].clone();
            let mut bad = flip.clone();
            bad.flipped_curve = RationalVector::new(coords);
            ensure(!verify_flip(root, &bad, target).is_empty(), || format!("{ray}: flipped curve [{k}] unnoticed"))?;
            mutations += 1;
        }
        // The target's canonical class and K-nonnegative curve belong to the flip data too.
        for (idx, field) in [(0usize, "canonical class"), (1, "K-nonnegative curve")] {
            let vec = if idx == 0 { &target.canonical_class } else { &target.k_nonneg_curves[0] };
            for k in 0..vec.dim() {
                if vec[k].is_zero() {
                    continue;
                }
                let mut bad = target.clone();
                let slot = if idx == 0 { &mut bad.canonical_class } else { &mut bad.k_nonneg_curves[0] };
                let mut coords = slot.clone().into_coords();
                coords[k] = -coords[k].clone();
                *slot = RationalVector::new(coords);
                ensure(!verify_flip(root, &flip, &bad).is_empty(), || {
                    format!("{ray}: target {field} [{k}] unnoticed")
                })?;
                mutations += 1;
            }
        }
    }
    Ok(format!("both flips verify; {mutations} single-sign mutations all reported"))
}

fn threefold() -> Outcome {
    let g = load_graph(corpus_file("threefold_blowup.json")).map_err(|e| e.to_string())?;
    let special = moving_cone_threefold(g.root_model()).map_err(|e| e.to_string())?;
    let generic = moving_cone(&g, g.root()).map_err(|e| e.to_string())?;
    let expected = Cone::from_generators(2, &[v(&[1, 0]), v(&[1, 1])]).map_err(|e| e.to_string())?;
    ensure(special == expected, || format!("threefold path gives {:?}", special.extreme_rays()))?;
    ensure(generic == special, || "generic path disagrees".into())?;
    Ok("cone{(1,0),(1,1)} by both paths".into())
}

fn random_cones() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f76);
    let zero = Rational::zero();
    for case in 0..500 {
        let dim = rng.gen_range(1..=4usize);
        let count = rng.gen_range(0..=8usize);
        let gens: Vec<RationalVector> =
            (0..count).map(|_| RationalVector::from_ints((0..dim).map(|_| rng.gen_range(-3i64..=3)))).collect();
        let fail = |what: &str| {
            format!("case {case} ({what}): {:?}", gens.iter().map(ToString::to_string).collect::<Vec<_>>())
        };

        let c = Cone::from_generators(dim, &gens).map_err(|e| e.to_string())?;
        let dual = Cone::from_generators(dim, &c.facet_normals()).map_err(|e| e.to_string())?;
        let back = Cone::from_generators(dim, &dual.facet_normals()).map_err(|e| e.to_string())?;
        ensure(dual == c.dual() && back == c, || fail("double dual"))?;

        let h = Cone::from_inequalities(dim, &c.facet_normals()).map_err(|e| e.to_string())?;
        ensure(h == c, || fail("constructors"))?;
        let generators = c.generators();
        let span = rank(&generators);
        for n in c.facet_normals() {
            ensure(generators.iter().all(|g| g.dot(&n) >= zero), || fail("generator violates facet"))?;
        }
        for n in c.facet_rays() {
            let tight: Vec<_> = generators.iter().filter(|g| g.dot(n).is_zero()).cloned().collect();
            ensure(rank(&tight) + 1 == span, || fail("facet not tight"))?;
        }

        let mut probes: Vec<RationalVector> =
            (0..8).map(|_| RationalVector::from_ints((0..dim).map(|_| rng.gen_range(-3i64..=3)))).collect();
        probes.extend(gens.iter().map(|g| -g));
        probes.extend(gens.windows(2).map(|w| &w[0] + &w[1]));
        for p in &probes {
            let got = c.contains(p).map_err(|e| e.to_string())?;
            ensure(got == oracle::fm_contains(&gens, p), || fail(&format!("membership of {p}")))?;
        }
    }
    Ok("500 cones, zero failures".into())
}

fn bdpp() -> Outcome {
    let g = bundle_graph()?;
    let eq = eq_for_variety(&g, "X").map_err(|e| e.to_string())?;
    let mut models = g.models().to_vec();
    models.iter_mut().filter(|m| m.id == "X").for_each(|m| m.declared_eff_generators = Some(eq.classes()));
    let g = ModelGraph::new("X", models).map_err(|e| e.to_string())?;
    let report = crosscheck_bdpp(&g, "X").map_err(|e| e.to_string())?;
    ensure(report.is_empty(), || format!("{report:?}"))?;
    Ok("Mov = Eff^∨".into())
}

fn termination_guard() -> Outcome {
    let g = load_graph(corpus_file("cycle.json")).map_err(|e| e.to_string())?;
    match enumerate_pmc_sequences(&g, g.root(), None) {
        Err(Error::CycleDetected { .. }) => {}
        other => return Err(format!("expected CycleDetected, got {other:?}")),
    }
    let out = run(["movcone", "sequences", &corpus_file("cycle.json")]);
    ensure(out.code == EXIT_COMPUTATION, || format!("exit {}", out.code))?;
    Ok("CycleDetected, exit 4".into())
}

fn slice() -> Outcome {
    let args = ["movcone", "slice", &corpus_file("bundle_blowup.json"), "--cone", "mov", "--plane", "1,1,1"];
    let (first, second) = (run(args), run(args));
    ensure(first.code == EXIT_OK, || first.stderr.clone())?;
    ensure(first.stdout.as_bytes() == second.stdout.as_bytes(), || "output differs between runs".into())?;
    let mov = moving_cone(&bundle_graph()?, "X").map_err(|e| e.to_string())?;
    let vertices = cross_section(&mov, &v(&[1, 1, 1])).map_err(|e| e.to_string())?;
    let expected: String = vertices.iter().map(|p| format!("{p}\n")).collect();
    ensure(first.stdout == expected, || format!("CLI and cross_section differ: {}", first.stdout))?;
    ensure(first.stdout == "0,1,0\n1/2,1/2,0\n1/2,0,1/2\n", || format!("triangle {}", first.stdout))?;
    Ok("triangle (0,1,0) (1/2,1/2,0) (1/2,0,1/2)".into())
}

fn main() -> ExitCode {
    // The corpus graph and the in-crate reference graph must be the same data.
    let same = bundle_graph().map(|g| g == corpus::bundle_example()).unwrap_or(false);
    let criteria: [Criterion; 10] = [
        ("Mori/nef duality", mori_nef_duality),
        ("equation set", equation_set),
        ("moving cone", moving_cone_rays),
        ("flip sequences", sequences),
        ("flip axioms", flip_axioms),
        ("threefold moving cone", threefold),
        ("random cone properties", random_cones),
        ("Mov/Eff duality cross-check", bdpp),
        ("termination guard", termination_guard),
        ("moving cone slice", slice),
    ];
    let mut failed = !same;
    if !same {
        println!("FAIL corpus file differs from reference graph");
    }
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed = true;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
