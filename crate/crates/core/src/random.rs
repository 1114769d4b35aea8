//! Randomized small systems and the consistency checks run on them.
//!
//! A [`SystemRecipe`] is plain data, so it can come from a seeded RNG (the
//! CLI `selfcheck` command) or from a shrinking property-test strategy. Every
//! recipe builds a homogeneous system over generators `x`, `y`, `z` whose
//! rules decrease under deglex `x < y < z`, hence a terminating one.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{Monomial, MonomialOrder, Polynomial, Quiver, Scalar};
use crate::completion::{certify_termination, check_confluence, complete, local_joinability, CompletionBounds, TerminationHint};
use crate::error::Result;
use crate::homology::{build_complex, module_exactness, tor_table, BOUNDARY_DIM};
use crate::resolution::saturate;
use crate::rewrite::{ideal_member, irreducible_monomials, Polygraph2, QuotientModel, Rule};

const NAMES: [&str; 3] = ["x", "y", "z"];

/// Prime used for the cross-field comparison.
pub const CHECK_PRIME: u64 = 32003;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleRecipe {
    /// Source letters, taken modulo the number of generators.
    pub src: Vec<u8>,
    /// (coefficient, selector): the selector picks, modulo their number, one
    /// of the words of the source's degree that are smaller than the source.
    pub terms: Vec<(i8, u16)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemRecipe {
    pub gens: u8,
    pub rules: Vec<RuleRecipe>,
}

impl SystemRecipe {
    /// Draw a recipe with at most `max_gens` generators, `max_rules` rules
    /// and rule degrees between 2 and `max_degree`.
    pub fn random(rng: &mut impl Rng, max_gens: u8, max_rules: usize, max_degree: usize) -> SystemRecipe {
        let gens = rng.gen_range(1..=max_gens.clamp(1, 3));
        let n = rng.gen_range(1..=max_rules.max(1));
        let rules = (0..n)
            .map(|_| {
                let d = rng.gen_range(2..=max_degree.max(2));
                let src = (0..d).map(|_| rng.gen_range(0..gens)).collect();
                let k = rng.gen_range(0..=2);
                let terms = (0..k)
                    .map(|_| {
                        let c = *[-2i8, -1, 1, 2].choose(rng).unwrap();
                        (c, rng.gen())
                    })
                    .collect();
                RuleRecipe { src, terms }
            })
            .collect();
        SystemRecipe { gens, rules }
    }

    pub fn build(&self) -> Polygraph2 {
        let g = self.gens.clamp(1, 3) as usize;
        let q = Quiver::single(&NAMES[..g]);
        let ord = MonomialOrder::deglex(&q, (0..g as u32).collect()).expect("valid precedence");
        let rules = self
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let word: Vec<u32> = r.src.iter().map(|&c| c as u32 % g as u32).collect();
                let src = q.monomial(&word).expect("one object");
                let smaller: Vec<Monomial> = q.words_of_degree(word.len() as u32).into_iter().filter(|m| ord.cmp(m, &src).is_lt()).collect();
                let mut tgt = Polynomial::zero(0, 0);
                if !smaller.is_empty() {
                    for &(c, sel) in &r.terms {
                        tgt.add_term(&Scalar::from_int(c as i64), &smaller[sel as usize % smaller.len()]);
                    }
                }
                Rule::new(format!("r{}", i + 1), src, tgt)
            })
            .collect();
        let mut p = Polygraph2::new(q, rules).expect("rules are parallel").with_order(ord.clone());
        p.termination = certify_termination(&p, TerminationHint::Order(ord)).certificate();
        p
    }
}

/// Outcome of each check; `None` when it was skipped because completion
/// did not finish within its bounds.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PropertyReport {
    pub system: Vec<String>,
    /// Local joinability on short words agrees with critical-pair joinability.
    pub newman: Option<bool>,
    /// Normal-form membership agrees with the brute-force ideal, and the
    /// standard basis counts agree with the quotient dimensions.
    pub membership: Option<bool>,
    /// ∂∘∂ = 0 on the reduced complex and on the module complex.
    pub square_zero: Option<bool>,
    /// Tor over ℚ equals Tor over GF(32003).
    pub mod_p: Option<bool>,
    /// Tor is unchanged by collapse saturation.
    pub collapse: Option<bool>,
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn completed(&self) -> bool {
        self.membership.is_some()
    }
}

/// Bounds for the per-system checks.
#[derive(Clone, Copy, Debug)]
pub struct CheckBounds {
    pub joinability_len: usize,
    pub dmax: u32,
    pub completion: CompletionBounds,
}

impl Default for CheckBounds {
    fn default() -> Self {
        CheckBounds { joinability_len: 6, dmax: 5, completion: CompletionBounds { max_degree: 7, max_rules: 48 } }
    }
}

fn record(rep: &mut PropertyReport, name: &str, ok: bool, detail: impl FnOnce() -> String) -> Option<bool> {
    if !ok {
        rep.failures.push(format!("{name}: {}", detail()));
    }
    Some(ok)
}

/// Random homogeneous polynomial of degree d: half the time an element of
/// the ideal, otherwise a random combination of words.
fn random_poly(rng: &mut impl Rng, p: &Polygraph2, d: u32) -> Polynomial {
    let q = &p.quiver;
    let mut f = Polynomial::zero(0, 0);
    if rng.gen_bool(0.5) {
        for _ in 0..3 {
            let r = &p.rules()[rng.gen_range(0..p.rules().len())];
            let rd = q.degree(&r.src);
            if rd > d {
                continue;
            }
            let ld = rng.gen_range(0..=d - rd);
            let ls = q.words_of_degree(ld);
            let rs = q.words_of_degree(d - rd - ld);
            let (l, rr) = (ls.choose(rng).unwrap(), rs.choose(rng).unwrap());
            f.add_scaled(&Scalar::from_int(rng.gen_range(-3..=3)), &r.relation().whisker(l, rr));
        }
    } else {
        let ws = q.words_of_degree(d);
        for _ in 0..3 {
            f.add_term(&Scalar::from_int(rng.gen_range(-3..=3)), ws.choose(rng).unwrap());
        }
    }
    f
}

fn tor_low(p: &Polygraph2, dmax: u32) -> Result<std::collections::BTreeMap<(usize, u32), crate::homology::TorEntry>> {
    let cx = build_complex(p, BOUNDARY_DIM, dmax)?;
    Ok(tor_table(&cx, 3)?.entries)
}

/// Run every check on one terminating homogeneous system.
pub fn check_properties(p: &Polygraph2, rng: &mut impl Rng, b: CheckBounds) -> Result<PropertyReport> {
    let mut rep = PropertyReport { system: (0..p.rules().len()).map(|i| p.show_rule(i)).collect(), ..Default::default() };
    let mut p = p.clone();
    if p.termination.is_none() {
        p.termination = certify_termination(&p, TerminationHint::Auto).certificate();
    }
    let conf = check_confluence(&p)?;
    let local = local_joinability(&p, b.joinability_len)?;
    rep.newman = record(&mut rep, "newman", conf.convergent == local.is_none(), || {
        format!("critical pairs say {}, local branchings say {:?}", conf.convergent, local.map(|m| p.show_mono(&m)))
    });

    let ord = p.order.clone().expect("recipes carry an order");
    let res = complete(&p, &ord, b.completion)?;
    if !res.certified {
        return Ok(rep);
    }
    let sys = res.system;

    let model = QuotientModel::build(&p, b.dmax)?;
    let counts = irreducible_monomials(&sys, b.dmax).counts();
    let mut ok = (0..=b.dmax).all(|d| counts[d as usize] == model.quotient_dim(d));
    let mut detail = format!("standard basis counts {counts:?}");
    for d in 1..=b.dmax {
        for _ in 0..4 {
            let f = random_poly(rng, &p, d);
            let (a, e) = (ideal_member(&f, &sys)?, model.in_ideal(&f, d));
            if a != e {
                ok = false;
                detail = format!("{}: normal form says {a}, linear algebra says {e}", p.show_poly(&f));
            }
        }
    }
    rep.membership = record(&mut rep, "membership", ok, || detail);

    let cx = build_complex(&sys, BOUNDARY_DIM, b.dmax)?;
    let reduced_ok = (1..BOUNDARY_DIM).all(|k| cx.square_zero(k));
    let module = module_exactness(&sys, b.dmax.min(4))?;
    let module_ok = module.iter().all(|e| e.square_zero.iter().all(|&z| z));
    let exact_ok = module.iter().all(|e| e.exact.iter().all(|&z| z));
    rep.square_zero = record(&mut rep, "square-zero", reduced_ok && module_ok && exact_ok, || {
        format!("reduced {reduced_ok}, module {module_ok}, module exactness {exact_ok}")
    });

    let tq = tor_table(&cx, 3)?.entries;
    let pp = p.to_prime_field(CHECK_PRIME)?;
    let pp = {
        let mut s = pp.with_rules(pp.rules().to_vec())?;
        s.termination = certify_termination(&s, TerminationHint::Order(ord.clone())).certificate();
        s
    };
    let rp = complete(&pp, &ord, b.completion)?;
    let mod_ok = rp.certified && tor_low(&rp.system, b.dmax)? == tq;
    rep.mod_p = record(&mut rep, "mod-p", mod_ok, || {
        if rp.certified {
            "Tor tables differ".into()
        } else {
            "completion over GF(32003) did not finish".into()
        }
    });

    let (collapsed, _) = saturate(&cx)?;
    let tc = tor_table(&collapsed, 3)?.entries;
    rep.collapse = record(&mut rep, "collapse", tc == tq, || "Tor changed under collapse".into());
    Ok(rep)
}

/// Draw `cases` recipes from a seeded generator and check each.
pub fn selfcheck(seed: u64, cases: usize, b: CheckBounds) -> Result<Vec<(SystemRecipe, PropertyReport)>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(cases);
    for _ in 0..cases {
        let r = SystemRecipe::random(&mut rng, 3, 4, 3);
        let rep = check_properties(&r.build(), &mut rng, b)?;
        out.push((r, rep));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recipes_build_terminating_homogeneous_systems() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = SystemRecipe::random(&mut rng, 3, 4, 3).build();
            assert!(p.is_homogeneous());
            assert!(p.termination.is_some());
        }
    }

    #[test]
    fn a_few_seeded_systems_pass() {
        for (r, rep) in selfcheck(1, 6, CheckBounds::default()).unwrap() {
            assert!(rep.passed(), "{r:?}: {:?}", rep.failures);
        }
    }
}
