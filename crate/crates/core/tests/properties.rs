use proptest::prelude::*;

use linrew::algebra::{Monomial, MonomialOrder, Polynomial, Quiver, Scalar};
use linrew::completion::{complete, interreduce, CompletionBounds};
use linrew::io::{parse, print};
use linrew::random::{RuleRecipe, SystemRecipe};
use linrew::rewrite::{normal_form, Polygraph2, Strategy as Rewrite, DEFAULT_STEP_BUDGET};

fn xyz() -> Quiver {
    Quiver::single(&["x", "y", "z"])
}

fn word() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..3, 0..5)
}

fn poly() -> impl Strategy<Value = Vec<(i8, Vec<u32>)>> {
    prop::collection::vec((-3i8..=3, word()), 0..4)
}

fn build_poly(q: &Quiver, terms: &[(i8, Vec<u32>)]) -> Polynomial {
    let mut f = Polynomial::zero(0, 0);
    for (c, w) in terms {
        f.add_term(&Scalar::from_int(*c as i64), &q.monomial(w).unwrap());
    }
    f
}

/// Terms with letters reduced modulo the number of generators of `p`.
fn restrict(p: &Polygraph2, terms: &[(i8, Vec<u32>)]) -> Vec<(i8, Vec<u32>)> {
    let n = p.quiver.len() as u32;
    terms.iter().map(|(c, w)| (*c, w.iter().map(|g| g % n).collect())).collect()
}

fn orders(q: &Quiver) -> Vec<MonomialOrder> {
    vec![
        MonomialOrder::deglex(q, vec![0, 1, 2]).unwrap(),
        MonomialOrder::deglex(q, vec![2, 0, 1]).unwrap(),
        MonomialOrder::weighted(q, vec![0, 1, 2], vec![3, 1, 2]).unwrap(),
        MonomialOrder::elimination(q, vec![vec![0, 1], vec![2]]).unwrap(),
    ]
}

fn recipe() -> impl Strategy<Value = SystemRecipe> {
    let rule = (
        prop::collection::vec(0u8..3, 2..=3),
        prop::collection::vec((prop::sample::select(vec![-2i8, -1, 1, 2]), any::<u16>()), 0..=2),
    )
        .prop_map(|(src, terms)| RuleRecipe { src, terms });
    (1u8..=3, prop::collection::vec(rule, 1..=4)).prop_map(|(gens, rules)| SystemRecipe { gens, rules })
}

fn completed(p: &Polygraph2) -> Option<Polygraph2> {
    let ord = p.order.clone().unwrap();
    let res = complete(p, &ord, CompletionBounds { max_degree: 7, max_rules: 48 }).unwrap();
    res.certified.then_some(res.system)
}

fn nf(f: &Polynomial, p: &Polygraph2, s: Rewrite) -> Polynomial {
    normal_form(f, p, s, DEFAULT_STEP_BUDGET).unwrap().0
}

fn fixture(name: &str) -> Polygraph2 {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    let p = parse(&std::fs::read_to_string(path).unwrap()).unwrap().system;
    completed(&p).unwrap()
}

proptest! {
    #[test]
    fn orders_are_total_and_monomial(a in word(), b in word(), c in word()) {
        let q = xyz();
        let (a, b, c) = (q.monomial(&a).unwrap(), q.monomial(&b).unwrap(), q.monomial(&c).unwrap());
        for o in orders(&q) {
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            prop_assert_eq!(o.cmp(&a, &b).is_eq(), a == b);
            if o.cmp(&a, &b).is_lt() {
                prop_assert!(o.cmp(&c.mul(&a), &c.mul(&b)).is_lt());
                prop_assert!(o.cmp(&a.mul(&c), &b.mul(&c)).is_lt());
                if o.cmp(&b, &c).is_lt() {
                    prop_assert!(o.cmp(&a, &c).is_lt());
                }
            }
        }
    }

    #[test]
    fn polynomial_ring_laws(f in poly(), g in poly(), h in poly()) {
        let q = xyz();
        let (f, g, h) = (build_poly(&q, &f), build_poly(&q, &g), build_poly(&q, &h));
        prop_assert_eq!(f.concat(&g).concat(&h), f.concat(&g.concat(&h)));
        prop_assert_eq!(f.checked_add(&g).unwrap(), g.checked_add(&f).unwrap());
        let left = f.concat(&g.checked_add(&h).unwrap());
        prop_assert_eq!(left, f.concat(&g).checked_add(&f.concat(&h)).unwrap());
        let right = g.checked_add(&h).unwrap().concat(&f);
        prop_assert_eq!(right, g.concat(&f).checked_add(&h.concat(&f)).unwrap());
        prop_assert!(f.checked_sub(&f).unwrap().is_zero());
        let one = Polynomial::monomial(Monomial::identity(0));
        prop_assert_eq!(f.concat(&one), f.clone());
    }

    #[test]
    fn normal_forms_on_fixtures(f in poly(), g in poly()) {
        for name in ["xy.lp", "pp05.lp", "xyz.lp"] {
            let p = fixture(name);
            let (f, g) = (build_poly(&p.quiver, &restrict(&p, &f)), build_poly(&p.quiver, &restrict(&p, &g)));
            let nf_f = nf(&f, &p, Rewrite::Rightmost);
            prop_assert_eq!(&nf(&f, &p, Rewrite::Leftmost), &nf_f, "Church-Rosser on {}", name);
            prop_assert_eq!(&nf(&nf_f, &p, Rewrite::Rightmost), &nf_f, "idempotence on {}", name);
            let sum = nf(&f.checked_add(&g).unwrap(), &p, Rewrite::Rightmost);
            prop_assert_eq!(sum, nf_f.checked_add(&nf(&g, &p, Rewrite::Rightmost)).unwrap(), "linearity on {}", name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn completed_random_systems_are_church_rosser(r in recipe(), f in poly()) {
        let p = r.build();
        if let Some(s) = completed(&p) {
            let f = build_poly(&s.quiver, &restrict(&s, &f));
            prop_assert_eq!(nf(&f, &s, Rewrite::Leftmost), nf(&f, &s, Rewrite::Rightmost));
        }
    }

    #[test]
    fn interreduce_is_idempotent(r in recipe()) {
        let p = r.build();
        let once = interreduce(&p).unwrap();
        let twice = interreduce(&once).unwrap();
        let show = |s: &Polygraph2| (0..s.rules().len()).map(|i| s.show_rule(i)).collect::<Vec<_>>();
        prop_assert_eq!(show(&once), show(&twice));
        prop_assert!(once.is_reduced());
    }

    #[test]
    fn print_then_parse_round_trips(r in recipe()) {
        let p = r.build();
        let text = print(&p);
        let back = parse(&text).unwrap().system;
        prop_assert_eq!(print(&back), text);
        prop_assert_eq!(back.rules().len(), p.rules().len());
        prop_assert_eq!(back.termination.is_some(), p.termination.is_some());
    }
}
