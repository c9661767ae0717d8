use floorsum::exact_arith::Int;
use floorsum::verify::{run_all, LawId, Status, Verifier};
use floorsum::w_function::f_term;
use floorsum::Rat;

fn off_by_one(x: &Int, y: &Int) -> Rat {
    f_term(x, y) + Rat::from_integer(Int::from(1))
}

fn swapped(x: &Int, y: &Int) -> Rat {
    f_term(y, x)
}

#[test]
fn full_run_has_one_passing_report_per_law() {
    for max in [2, 50] {
        let reports = run_all(max).unwrap();
        assert_eq!(reports.len(), 21);
        for (report, law) in reports.iter().zip(LawId::ALL) {
            assert_eq!(report.law, law);
            assert_eq!(report.status, Status::Pass, "{law} at {max}");
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let a = serde_json::to_string(&run_all(25).unwrap()).unwrap();
    let b = serde_json::to_string(&run_all(25).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn corrupted_chain_kernel_is_caught() {
    for bad in [off_by_one as fn(&Int, &Int) -> Rat, swapped] {
        let v = Verifier::with_f_term(bad);
        for law in [LawId::WEuclid, LawId::DedekindFast, LawId::S2Formula] {
            let report = v.run_law(law, 20, None).unwrap();
            assert_eq!(report.status, Status::Fail, "{law}");
            assert!(report.counterexample_total > 0);
            assert!(!report.counterexamples.is_empty());
            assert!(report.counterexamples.len() <= 16);
        }
        // laws that never touch the kernel are unaffected
        assert_eq!(
            v.run_law(LawId::RecipW, 20, None).unwrap().status,
            Status::Pass
        );
    }
}

#[test]
fn counterexamples_come_in_grid_order() {
    let v = Verifier::with_f_term(off_by_one);
    let report = v.run_law(LawId::WEuclid, 40, None).unwrap();
    let keys: Vec<(i64, i64)> = report
        .counterexamples
        .iter()
        .map(|c| (c.input[0].1, c.input[1].1))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);
    assert_eq!(keys.len(), 16);
}
