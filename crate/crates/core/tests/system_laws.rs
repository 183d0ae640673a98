use proptest::prelude::*;

use ctrs_core::analysis::{check_almost_orthogonal, conditional_overlaps};
use ctrs_core::corpus;
use ctrs_core::engine::ground_terms;
use ctrs_core::mctxt::Mctxt;
use ctrs_core::parse::{parse, render_system};
use ctrs_core::{Bounds, Ctrs, Engine, Rule, Term, Var};

fn fib() -> Ctrs {
    parse(corpus::FIB).unwrap().ctrs
}

fn rename_rules(ctrs: &Ctrs, suffix: &str) -> Ctrs {
    let rules: Vec<Rule> = ctrs.rules().iter().map(|r| r.map_vars(&|v: &Var| Var::new(format!("{}{suffix}", v.name())))).collect();
    Ctrs::new(rules).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn levels_are_monotone(i in 0usize..200, n in 0usize..3) {
        let r = fib();
        let e = Engine::new(&r, Bounds::default());
        let terms = ground_terms(r.signature(), 6);
        let t = &terms[i % terms.len()];
        let lower = e.cstep_n(t, n).unwrap().value;
        let upper = e.cstep_n(t, n + 1).unwrap().value;
        prop_assert!(lower.iter().all(|u| upper.contains(u)));
        let lower = e.epar_successors(t, n).unwrap();
        let upper = e.epar_successors(t, n + 1).unwrap();
        prop_assert!(lower.value.keys().all(|u| upper.value.contains_key(u)));
    }

    #[test]
    fn single_hole_closure(i in 0usize..200, j in 0usize..200, n in 1usize..4, wrap in 0usize..3) {
        let r = fib();
        let e = Engine::new(&r, Bounds::default());
        let terms = ground_terms(r.signature(), 5);
        let s = &terms[i % terms.len()];
        let succ = e.epar_successors(s, n).unwrap();
        let keys: Vec<&Term> = succ.value.keys().collect();
        let t = keys[j % keys.len()];
        let hole = Mctxt::Hole;
        let ctx = match wrap {
            0 => hole,
            1 => Mctxt::Fun(r.symbol("s").unwrap().clone(), vec![hole]),
            _ => Mctxt::Fun(r.symbol("add").unwrap().clone(), vec![Mctxt::of_term(s), hole]),
        };
        let (from, to) = (ctx.fill(&[s.clone()]).unwrap(), ctx.fill(&[t.clone()]).unwrap());
        let w = e.epar_check(&from, &to, n).unwrap().value;
        prop_assert!(w.is_some_and(|w| e.replay(&w, &from, &to).unwrap()));
    }
}

#[test]
fn overlaps_do_not_depend_on_variable_names() {
    for (name, text) in corpus::ALL {
        let r = parse(text).unwrap().ctrs;
        let renamed = rename_rules(&r, "_q");
        let a: Vec<_> = conditional_overlaps(&r).iter().map(|o| (o.rule1_index, o.rule2_index, o.pos.clone())).collect();
        let b: Vec<_> = conditional_overlaps(&renamed).iter().map(|o| (o.rule1_index, o.rule2_index, o.pos.clone())).collect();
        assert_eq!(a, b, "{name}");
        let (pa, da) = check_almost_orthogonal(&r, &Bounds::default());
        let (pb, db) = check_almost_orthogonal(&renamed, &Bounds::default());
        assert_eq!(pa.holds, pb.holds, "{name}");
        assert_eq!(da, db, "{name}");
    }
}

#[test]
fn adding_rules_never_restores_properties() {
    let r = fib();
    let extra = parse("(VAR x y) (RULES f(x, x) -> x g(x) -> y)").unwrap().ctrs;
    let mut rules = r.rules().to_vec();
    rules.extend(extra.rules().iter().cloned());
    let bigger = Ctrs::new(rules).unwrap();
    assert!(!bigger.check_left_linear().holds);
    assert!(!bigger.check_three_ctrs().holds);
    for sub in [&r, &bigger] {
        // every witness names an existing rule
        for w in sub.check_left_linear().witnesses.iter().chain(&sub.check_three_ctrs().witnesses) {
            assert!(w.rule >= 1 && w.rule <= sub.rules().len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn parser_never_panics(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let _ = parse(&String::from_utf8_lossy(&bytes));
    }

    #[test]
    fn parser_never_panics_on_token_soup(tokens in prop::collection::vec(
        prop::sample::select(vec!["(", ")", ",", "->", "==", "|", "VAR", "RULES", "COMMENT", "CONDITIONTYPE", "ORIENTED", "f", "x", "a", "\n"]),
        0..60,
    )) {
        let _ = parse(&tokens.join(" "));
    }
}

#[test]
fn rendering_is_a_fixpoint_on_the_corpus() {
    for (_, text) in corpus::ALL {
        let once = render_system(&parse(text).unwrap().ctrs);
        assert_eq!(render_system(&parse(&once).unwrap().ctrs), once);
    }
}

#[test]
fn term_rendering_round_trips() {
    let spec = parse(corpus::FIB).unwrap();
    for t in ground_terms(spec.ctrs.signature(), 6) {
        assert_eq!(spec.parse_term(&t.to_string()).unwrap(), t);
    }
}
