//! The successor and membership algorithms over the full fusible set.
//!
//! `succ` finds the smallest fusible number strictly greater than a rational,
//! `weak_succ` the smallest one greater or equal, and `is_fusible` decides
//! membership. The recursion schemes follow the published procedures line by
//! line — including the deliberately different loop exits (`succ` stops when
//! `y <= r - 1/2`, `weak_succ` when `y < r - 1/2`) — but run on an explicit
//! work stack: call depth, not value size, is the quantity that explodes,
//! and a native stack would overflow long before a step budget runs out.
//!
//! One budget unit is charged per procedure entry, shared across the mutual
//! recursion, so failure points are reproducible.

use crate::budget::Budget;
use crate::dyadic::{fuse, Dyadic, Rational};
use crate::error::{Error, Result};

/// `2r - t - 1`, the partner argument appearing in all three procedures.
fn partner_arg(r: &Rational, t: &Rational) -> Result<Rational> {
    r.try_double()?.try_sub(t)?.try_add_int(-1)
}

/// `t - 1/denominator(t)` (the predecessor step of the candidate loop).
fn denominator_step(t: &Rational) -> Result<Rational> {
    t.try_sub(&t.denominator_recip())
}

fn exhausted(budget: &Budget, depth: usize, frontier: String) -> Error {
    Error::BudgetExhausted {
        steps: budget.steps_consumed(),
        depth,
        frontier,
    }
}

#[derive(Debug)]
enum Phase {
    AwaitX,
    AwaitY,
}

#[derive(Debug)]
struct Frame {
    r: Rational,
    min: Option<Rational>,
    x: Rational,
    y: Rational,
    /// Argument passed to the pending recursive call (weak_succ compares the
    /// result against it for the early-return branches).
    passed: Rational,
    phase: Phase,
}

/// Smallest fusible number strictly greater than `r`.
pub fn succ(r: &Rational, budget: &mut Budget) -> Result<Dyadic> {
    let zero = Rational::zero();
    let half = Rational::from_frac(1, 2);
    let mut stack: Vec<Frame> = Vec::new();
    let mut arg = r.clone();
    'call: loop {
        if !budget.try_step() {
            let deepest = stack.last().map(|f| f.r.to_string()).unwrap_or_default();
            return Err(exhausted(
                budget,
                stack.len(),
                format!("succ pending at r={deepest}, next argument {arg}"),
            ));
        }
        let mut result: Rational;
        if arg < zero {
            result = zero.clone();
        } else {
            if !budget.depth_ok(stack.len() + 1) {
                return Err(exhausted(budget, stack.len(), format!("succ recursion at {arg}")));
            }
            // enter the loop body: x <- Succ(2r - y - 1) with y = r
            let next = partner_arg(&arg, &arg)?;
            stack.push(Frame {
                r: arg,
                min: None,
                x: zero.clone(),
                y: zero.clone(),
                passed: next.clone(),
                phase: Phase::AwaitX,
            });
            let top = stack.last_mut().unwrap();
            top.y = top.r.clone();
            arg = next;
            continue 'call;
        }
        // a call returned; unwind as far as possible
        loop {
            let Some(top) = stack.last_mut() else {
                return Ok(result.to_dyadic().expect("succ returns a fusible number"));
            };
            match top.phase {
                Phase::AwaitX => {
                    top.x = result;
                    top.phase = Phase::AwaitY;
                    arg = partner_arg(&top.r, &top.x)?;
                    top.passed = arg.clone();
                    continue 'call;
                }
                Phase::AwaitY => {
                    top.y = result;
                    let cand = fuse(&top.x, &top.y)?;
                    if top.min.as_ref().map_or(true, |m| cand < *m) {
                        top.min = Some(cand);
                    }
                    top.y = denominator_step(&top.y)?;
                    if top.y <= top.r.try_sub(&half)? {
                        result = top.min.take().expect("loop ran at least once");
                        stack.pop();
                        continue;
                    }
                    top.phase = Phase::AwaitX;
                    arg = partner_arg(&top.r, &top.y)?;
                    top.passed = arg.clone();
                    continue 'call;
                }
            }
        }
    }
}

/// Smallest fusible number greater than or equal to `r`.
pub fn weak_succ(r: &Rational, budget: &mut Budget) -> Result<Dyadic> {
    let zero = Rational::zero();
    let half = Rational::from_frac(1, 2);
    let mut stack: Vec<Frame> = Vec::new();
    let mut arg = r.clone();
    'call: loop {
        if !budget.try_step() {
            let deepest = stack.last().map(|f| f.r.to_string()).unwrap_or_default();
            return Err(exhausted(
                budget,
                stack.len(),
                format!("weak_succ pending at r={deepest}, next argument {arg}"),
            ));
        }
        let mut result: Rational;
        if arg <= zero {
            result = zero.clone();
        } else {
            if !budget.depth_ok(stack.len() + 1) {
                return Err(exhausted(
                    budget,
                    stack.len(),
                    format!("weak_succ recursion at {arg}"),
                ));
            }
            let next = partner_arg(&arg, &arg)?;
            stack.push(Frame {
                r: arg,
                min: None,
                x: zero.clone(),
                y: zero.clone(),
                passed: next.clone(),
                phase: Phase::AwaitX,
            });
            let top = stack.last_mut().unwrap();
            top.y = top.r.clone();
            arg = next;
            continue 'call;
        }
        loop {
            let Some(top) = stack.last_mut() else {
                return Ok(result.to_dyadic().expect("weak_succ returns a fusible number"));
            };
            match top.phase {
                Phase::AwaitX => {
                    if result == top.passed {
                        // x = 2r - y - 1 is itself fusible: r = x ~ y is fusible
                        result = top.r.clone();
                        stack.pop();
                        continue;
                    }
                    top.x = result;
                    top.phase = Phase::AwaitY;
                    arg = partner_arg(&top.r, &top.x)?;
                    top.passed = arg.clone();
                    continue 'call;
                }
                Phase::AwaitY => {
                    if result == top.passed {
                        result = top.r.clone();
                        stack.pop();
                        continue;
                    }
                    top.y = result;
                    let cand = fuse(&top.x, &top.y)?;
                    if top.min.as_ref().map_or(true, |m| cand < *m) {
                        top.min = Some(cand);
                    }
                    top.y = denominator_step(&top.y)?;
                    if top.y < top.r.try_sub(&half)? {
                        result = top.min.take().expect("loop ran at least once");
                        stack.pop();
                        continue;
                    }
                    top.phase = Phase::AwaitX;
                    arg = partner_arg(&top.r, &top.y)?;
                    top.passed = arg.clone();
                    continue 'call;
                }
            }
        }
    }
}

/// Decides whether `r` is a fusible number.
pub fn is_fusible(r: &Rational, budget: &mut Budget) -> Result<bool> {
    if !r.is_dyadic() {
        return Ok(false);
    }
    let w = weak_succ(r, budget)?;
    Ok(w.to_rational() == *r)
}
