mod common;

use common::*;
use montel::gallery::{
    montel_optimality_instance, multivariate_counterexample, multivariate_counterexample_with_gate,
    popoviciu_counterexample_1d, Gate,
};
use montel::lattice::GeneratorSet;
use montel::SymReal;

#[test]
fn one_dimensional_counterexamples() {
    let t = algebraic(1);
    let gamma = GeneratorSet::kronecker(&[SymReal::symbol_at(&t, 0)]).unwrap();
    for m in 1..=4 {
        let ex = popoviciu_counterexample_1d(m, &gamma).unwrap();
        assert!(ex.report.pass, "m={m}: {:#?}", ex.report);
        let eqs = ex.report.check("difference-equations").unwrap();
        assert_eq!(eqs.checked, 100);
    }
}

#[test]
fn optimality_constants() {
    for (d, s, m, c) in [(1, 2, 1, "2"), (1, 2, 2, "24"), (2, 3, 1, "6"), (2, 3, 2, "720")] {
        let inst = montel_optimality_instance(d, s, m).unwrap();
        assert!(inst.report.pass, "{:#?}", inst.report);
        assert_eq!(inst.report.find_fact("delta_sm_at_zero"), Some(c));
    }
}

#[test]
fn multivariate_counterexamples() {
    for d in 1..=3 {
        let t = algebraic(d);
        let theta: Vec<SymReal> = (0..d).map(|k| SymReal::symbol_at(&t, k)).collect();
        for m in 1..=3 {
            let fixed = multivariate_counterexample_with_gate(d, m, &theta, Gate::ThetaAndIntegers).unwrap();
            assert!(fixed.report.pass, "d={d} m={m}: {:#?}", fixed.report);

            // with the θ-only gate every sub-check except the unit-shift
            // equations holds
            let theta_gate = multivariate_counterexample(d, m, &theta).unwrap();
            for c in &theta_gate.report.checks {
                assert_eq!(c.pass, c.name != "difference-equations", "d={d} m={m} {}", c.name);
            }
            let eqs = theta_gate.report.check("difference-equations").unwrap();
            assert!(eqs.witnesses.iter().all(|w| w.values["direction"].starts_with("e_")));
        }
    }
}
