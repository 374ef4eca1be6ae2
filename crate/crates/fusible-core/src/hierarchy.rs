//! Budgeted evaluators for the Hardy hierarchy, the fast-growing (Wainer)
//! hierarchy, and the ε₀ diagonal.
//!
//! Definitions, for `n >= 1`:
//!
//! ```text
//! H_0(n) = n          H_{a+1}(n) = H_a(n+1)      H_a(n) = H_{[a]_n}(n)   (a limit)
//! F_0(n) = n+1        F_{a+1}(n) = F_a^(n)(n)    F_a(n) = F_{[a]_n}(n)   (a limit)
//! F_eps0(n) = F_{tau_n}(n)
//! ```
//!
//! Evaluation is iterative over an explicit stack of pending compositions —
//! in the worst case the call depth equals the function value, so native
//! recursion is not an option. The budget counts clause applications
//! (batched zero-clause compositions charge their full count), which makes
//! "astronomically large" results fail fast, deterministically, and with a
//! report of the frontier that was reached.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

fn exhausted(budget: &Budget, depth: usize, frontier: String) -> Error {
    Error::BudgetExhausted {
        steps: budget.steps_consumed(),
        depth,
        frontier,
    }
}

/// Hardy hierarchy `H_a(n)`.
pub fn hardy(a: &Ordinal, n: &BigUint, budget: &mut Budget) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::NonPositive("hardy argument must be >= 1".into()));
    }
    let mut ord = a.clone();
    let mut arg = n.clone();
    while !ord.is_zero() {
        if !budget.try_step() {
            return Err(exhausted(
                budget,
                0,
                format!("hardy at ordinal {ord}, argument {arg}"),
            ));
        }
        if ord.is_successor() {
            ord = ord.pred()?;
            arg += 1u32;
        } else {
            ord = ord.canonical_seq(&arg)?;
        }
    }
    Ok(arg)
}

/// Fast-growing hierarchy `F_a(n)`.
pub fn fgh(a: &Ordinal, n: &BigUint, budget: &mut Budget) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::NonPositive("fgh argument must be >= 1".into()));
    }
    // stack of (ordinal, pending composition count)
    let mut stack: Vec<(Ordinal, BigUint)> = vec![(a.clone(), BigUint::one())];
    let mut arg = n.clone();
    while let Some((ord, count)) = stack.pop() {
        if count.is_zero() {
            continue;
        }
        if ord.is_zero() {
            // F_0^(count): batch, charging one unit per application
            let charge = count.to_u64().unwrap_or(u64::MAX);
            if !budget.try_steps(charge) {
                return Err(exhausted(
                    budget,
                    stack.len(),
                    format!("fgh at ordinal 0 x{count}, argument {arg}"),
                ));
            }
            arg += count;
            continue;
        }
        if !budget.try_step() {
            return Err(exhausted(
                budget,
                stack.len(),
                format!("fgh at ordinal {ord}, argument {arg}"),
            ));
        }
        if !budget.depth_ok(stack.len() + 2) {
            return Err(exhausted(
                budget,
                stack.len(),
                format!("fgh stack depth at ordinal {ord}"),
            ));
        }
        if ord.is_successor() {
            let pred = ord.pred()?;
            let reps = arg.clone();
            stack.push((ord, count - 1u32));
            stack.push((pred, reps));
        } else {
            let step = ord.canonical_seq(&arg)?;
            stack.push((ord, count - 1u32));
            stack.push((step, BigUint::one()));
        }
    }
    Ok(arg)
}

/// The diagonal `F_eps0(n) = F_{tau_n}(n)`.
pub fn fgh_eps0(n: u32, budget: &mut Budget) -> Result<BigUint> {
    let tower = Ordinal::tau(n)?;
    fgh(&tower, &BigUint::from(n), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::{ordinal_add, random_ordinal, GenConfig};
    use rand::SeedableRng;

    fn o(s: &str) -> Ordinal {
        Ordinal::parse(s).unwrap()
    }

    fn n(k: u64) -> BigUint {
        BigUint::from(k)
    }

    fn b() -> Budget {
        Budget::with_steps(Budget::DEFAULT_HIERARCHY_STEPS)
    }

    #[test]
    fn hardy_examples() {
        assert_eq!(hardy(&Ordinal::zero(), &n(5), &mut b()).unwrap(), n(5));
        assert_eq!(hardy(&o("w"), &n(3), &mut b()).unwrap(), n(6));
        assert_eq!(hardy(&o("w^(w)"), &n(2), &mut b()).unwrap(), n(8));
        assert_eq!(hardy(&o("w^(2)"), &n(2), &mut b()).unwrap(), n(8));
        assert_eq!(hardy(&Ordinal::tau(2).unwrap(), &n(2), &mut b()).unwrap(), n(8));
        assert!(hardy(&o("w"), &BigUint::zero(), &mut b()).is_err());
    }

    #[test]
    fn fgh_examples() {
        assert_eq!(fgh(&Ordinal::zero(), &n(7), &mut b()).unwrap(), n(8));
        assert_eq!(fgh(&o("1"), &n(3), &mut b()).unwrap(), n(6));
        assert_eq!(fgh(&o("2"), &n(3), &mut b()).unwrap(), n(24));
        assert_eq!(fgh(&o("2"), &n(4), &mut b()).unwrap(), n(64));
        assert_eq!(fgh(&o("3"), &n(2), &mut b()).unwrap(), n(2048));
        assert_eq!(fgh(&o("w"), &n(2), &mut b()).unwrap(), n(8));
    }

    #[test]
    fn eps0_diagonal() {
        assert_eq!(fgh_eps0(1, &mut b()).unwrap(), n(2));
        // F_{tau_2}(2) unfolds into F_8(8)-scale values: must exhaust
        let mut budget = b();
        let err = fgh_eps0(2, &mut budget).unwrap_err();
        match err {
            Error::BudgetExhausted { steps, frontier, .. } => {
                // the last composition batch no longer fits, so the consumed
                // count lands just below the cap
                assert!(steps > 0 && steps <= Budget::DEFAULT_HIERARCHY_STEPS);
                assert!(frontier.contains("fgh at ordinal"), "frontier: {frontier}");
            }
            other => panic!("expected BudgetExhausted, got {other:?}"),
        }
    }

    #[test]
    fn exhaustion_is_deterministic_including_frontier() {
        let run = || {
            let mut budget = Budget::with_steps(10_000);
            fgh(&o("w^(2)"), &n(3), &mut budget).unwrap_err()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn hardy_strictly_increasing_in_argument() {
        // cases chosen so every evaluation completes quickly: H at w^2-level
        // already reaches 2^n scale, anything above explodes
        for ord in ["w", "w*2", "w*4+3", "w^(2)", "w^(2)+w"] {
            let a = o(ord);
            let mut prev: Option<BigUint> = None;
            for k in 1..=4u64 {
                let v = hardy(&a, &n(k), &mut b()).unwrap();
                if let Some(p) = prev {
                    assert!(v > p, "H_{ord} not increasing at {k}");
                }
                prev = Some(v);
            }
        }
    }

    #[test]
    fn hardy_respects_bounded_descents() {
        // a ->_k b implies H_a(n) > H_b(n) for n > k
        use crate::ordinal::{descend, Descent};
        let pairs = [
            ("w^(2)", "w*2", 2u64),
            ("w*3", "w+3", 3),
            ("w^(2)+w", "w^(2)", 2),
        ];
        for (a, bnd, k) in pairs {
            let a = o(a);
            let t = o(bnd);
            let mut budget = b();
            match descend(&a, &t, k, &mut budget).unwrap() {
                Descent::Reached(_) => {}
                Descent::Unreachable { .. } => panic!("descent {a} -> {t} should succeed"),
            }
            for arg in (k + 1)..=(k + 2) {
                let ha = hardy(&a, &n(arg), &mut b()).unwrap();
                let hb = hardy(&t, &n(arg), &mut b()).unwrap();
                assert!(ha > hb, "H order violated for {a} vs {t} at {arg}");
            }
        }
    }

    #[test]
    #[ignore]
    fn probe_sample_timings() {
        let a = o("w^(w^(2)*3+w*3)*3+w^(w^(2)*3+2)*2");
        eprintln!("parsed {a}");
        eprintln!("fgh start");
        let t = std::time::Instant::now();
        let f = fgh(&a, &n(2), &mut Budget::with_steps(50_000));
        eprintln!("fgh {:?} ok={}", t.elapsed(), f.is_ok());
        let t = std::time::Instant::now();
        let h = hardy(&Ordinal::omega_power(&a), &n(2), &mut Budget::with_steps(50_000));
        eprintln!("hardy {:?} ok={}", t.elapsed(), h.is_ok());
    }

    #[test]
    fn fgh_equals_hardy_of_omega_power_when_both_complete() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        let cfg = GenConfig {
            max_depth: 2,
            max_terms: 2,
            max_coeff: 3,
        };
        let mut joint = 0;
        for _ in 0..50 {
            let a = random_ordinal(&mut rng, &cfg);
            for k in 1..=4u64 {
                let f = fgh(&a, &n(k), &mut Budget::with_steps(50_000));
                let h = hardy(
                    &Ordinal::omega_power(&a),
                    &n(k),
                    &mut Budget::with_steps(50_000),
                );
                if let (Ok(f), Ok(h)) = (f, h) {
                    assert_eq!(f, h, "F_a vs H_(w^a) at a={a}, n={k}");
                    joint += 1;
                }
            }
        }
        assert!(joint >= 30, "only {joint} joint completions");
    }

    #[test]
    fn hardy_concatenates_over_ordinal_sum() {
        // H_{a+b}(n) = H_a(H_b(n)) when a + b is in CNF; inner values kept
        // small enough for the outer evaluation to complete
        let cases = [("w*2", "w"), ("w^(2)", "w+1"), ("w*5", "w*2+3")];
        for (xs, ys) in cases {
            let a = o(xs);
            let c = o(ys);
            let sum = ordinal_add(&a, &c);
            for k in 2..=3u64 {
                let inner = hardy(&c, &n(k), &mut b()).unwrap();
                let lhs = hardy(&sum, &n(k), &mut b()).unwrap();
                let rhs = hardy(&a, &inner, &mut b()).unwrap();
                assert_eq!(lhs, rhs, "H additivity at {sum}, n={k}");
            }
        }
    }
}
