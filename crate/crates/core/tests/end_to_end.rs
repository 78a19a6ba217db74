use limid::bench::{build_ebo, gen_random_diagram, RandomSpec};
use limid::credal::limid_to_credal;
use limid::model::fixtures::{coordination, bridge_attack, separable, trivial};
use limid::model::{
    brute_force_meu, expected_utility, expected_utility_naive, normalize_utilities, pure_strategy_count, Strategy,
};
use limid::reform::{export_lp, generate_bilinear, generate_bilinear_auto, linearize, PrecedenceOrdering};
use limid::solver::{solve_meu, spu, SearchOrder, SolveOptions, SolveStatus, SpuInit, WarmStart};
use limid::{Diagram, DiagramF32};

fn quiet() -> SolveOptions {
    SolveOptions { timing: false, ..SolveOptions::default() }
}

fn small_random(seed: u64) -> Diagram {
    let spec = RandomSpec::balanced(7 + (seed % 5) as usize, 2 + (seed % 2) as usize, seed);
    gen_random_diagram(&spec).unwrap()
}

#[test]
fn solver_matches_brute_force_on_random_diagrams() {
    for seed in 0..25 {
        let d = small_random(seed);
        let (_, meu) = brute_force_meu(&d).unwrap();
        for search in [SearchOrder::BestBound, SearchOrder::DepthFirst] {
            for warm_start in [WarmStart::Spu, WarmStart::None] {
                let r = solve_meu(&d, &SolveOptions { search, warm_start, ..quiet() }).unwrap();
                assert_eq!(r.status, SolveStatus::Proven);
                assert!((r.eu - meu).abs() < 1e-6, "seed {seed}: {} vs {meu}", r.eu);
                assert!((expected_utility(&d, &r.strategy) - meu).abs() < 1e-6);
                assert!(r.gap_percent.abs() < 1e-9);
                assert!(r.log.is_monotone(1e-9));
            }
        }
    }
}

#[test]
fn fixtures_solve_to_known_values() {
    let t = trivial::<f64>();
    let r = solve_meu(&t.diagram, &quiet()).unwrap();
    assert_eq!(r.eu, 5.0);
    assert_eq!(r.strategy.encoding(), Some(vec![0]));

    for d in [bridge_attack::<f64>().diagram, separable(), coordination()] {
        let (_, meu) = brute_force_meu(&d).unwrap();
        let r = solve_meu(&d, &quiet()).unwrap();
        assert!((r.eu - meu).abs() < 1e-9);
    }
}

#[test]
fn single_precision_pipeline_agrees_with_double() {
    let d = bridge_attack::<f64>().diagram;
    let single: DiagramF32 = d.cast();
    let a = solve_meu(&d, &quiet()).unwrap();
    let b = solve_meu(&single, &quiet()).unwrap();
    assert!((f64::from(b.eu) - a.eu).abs() < 1e-3, "{} vs {}", b.eu, a.eu);
}

#[test]
fn node_limit_reports_a_valid_bracket() {
    let d = build_ebo::<f64>();
    let options = SolveOptions { node_limit: Some(25), ..quiet() };
    let r = solve_meu(&d, &options).unwrap();
    assert_eq!(r.status, SolveStatus::Stopped);
    assert!(r.nodes_evaluated <= 25);
    assert!(r.eu <= r.upper_bound + 1e-9);
    assert!(r.gap_percent > 0.0);
    assert!((expected_utility(&d, &r.strategy) - r.eu).abs() < 1e-6);
    assert!(r.log.is_monotone(1e-9));
}

#[test]
fn bridge_attack_program_with_given_ordering() {
    let f = bridge_attack::<f64>();
    let (normalized, _) = normalize_utilities(&f.diagram).unwrap();
    let net = limid_to_credal(&normalized).unwrap();
    let orderings: Vec<PrecedenceOrdering> = net
        .queries()
        .iter()
        .map(|q| {
            let seq = if q.node == f.u3 {
                vec![f.d2, f.c2, f.d1, f.c1, f.c3, f.u3]
            } else {
                limid::reform::choose_precedence_ordering(&net, q.node).sequence
            };
            PrecedenceOrdering::new(&net, q.node, seq).unwrap()
        })
        .collect();
    let program = generate_bilinear(&net, &orderings).unwrap();
    let per_query: Vec<usize> =
        net.queries().iter().map(|q| program.constraints.iter().filter(|c| c.query == q.node).count()).collect();
    assert_eq!(per_query, vec![1, 1, 13]);
    let milp = linearize(&program).unwrap();
    let lp = export_lp(&milp);
    assert!(lp.starts_with("Maximize\n"));
    assert!(lp.ends_with("End\n"));
}

#[test]
fn spu_never_beats_the_optimum() {
    for seed in 0..15 {
        let d = small_random(seed);
        let (_, meu) = brute_force_meu(&d).unwrap();
        for init in [SpuInit::FirstAlternative, SpuInit::LastAlternative, SpuInit::Random(seed)] {
            let r = spu(&d, &init.strategy(&d), 50).unwrap();
            assert!(r.converged);
            assert!(r.eu <= meu + 1e-9);
            assert!(r.trace.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        }
    }
    let d = coordination::<f64>();
    let r = spu(&d, &Strategy::first_alternative(&d), 50).unwrap();
    let (_, meu) = brute_force_meu(&d).unwrap();
    assert!(r.eu < meu - 1e-6);
}

#[test]
fn elimination_matches_enumeration_on_generated_diagrams() {
    for seed in 0..10 {
        let d = small_random(100 + seed);
        let s = Strategy::first_alternative(&d);
        let a = expected_utility(&d, &s);
        let b = expected_utility_naive(&d, &s).unwrap();
        assert!((a - b).abs() < 1e-9);
        assert!(pure_strategy_count(&d).unwrap() >= 1);
    }
}

#[test]
fn generated_program_is_feasible_at_every_pure_strategy_of_a_small_diagram() {
    let d = small_random(3);
    let (normalized, info) = normalize_utilities(&d).unwrap();
    let program = generate_bilinear_auto(&limid_to_credal(&normalized).unwrap());
    let milp = linearize(&program).unwrap();
    assert!(!milp.binaries().is_empty());
    let r = solve_meu(&d, &quiet()).unwrap();
    assert!((info.denormalize(info.normalize(r.eu)) - r.eu).abs() < 1e-9);
}
