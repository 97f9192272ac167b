//! Tiny exact linear programs by Fourier-Motzkin elimination.
//!
//! Flag maximization only ever needs three variables, so elimination is
//! cheaper and simpler than a simplex tableau and stays exact over `Rat`.

use crate::rat::Rat;

/// One inequality `coeffs . x <= rhs`.
#[derive(Clone, Debug)]
pub struct LinCon {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

impl LinCon {
    pub fn new(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        LinCon { coeffs, rhs }
    }
}

/// Eliminates variable `v` from the system.
fn eliminate(cons: &[LinCon], v: usize) -> Option<Vec<LinCon>> {
    let mut kept = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for c in cons {
        let a = &c.coeffs[v];
        if a.is_zero() {
            kept.push(c.clone());
        } else if a.is_positive() {
            pos.push(c.clone());
        } else {
            neg.push(c.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            // (-a_n) * p + a_p * n has zero coefficient on v
            let ap = &p.coeffs[v];
            let an_neg = -&n.coeffs[v];
            let coeffs: Vec<Rat> = (0..p.coeffs.len())
                .map(|i| &(&an_neg * &p.coeffs[i]) + &(ap * &n.coeffs[i]))
                .collect();
            let rhs = &(&an_neg * &p.rhs) + &(ap * &n.rhs);
            debug_assert!(coeffs[v].is_zero());
            // Trivially true rows are dropped; trivially false rows kill it.
            if coeffs.iter().all(|c| c.is_zero()) {
                if rhs.is_negative() {
                    return None;
                }
                continue;
            }
            kept.push(LinCon { coeffs, rhs });
        }
    }
    Some(kept)
}

/// Bounds on a single variable implied by rows where all other coefficients
/// vanish under the supplied partial assignment (later variables fixed).
fn bounds_for(
    cons: &[LinCon],
    v: usize,
    fixed: &[(usize, Rat)],
) -> Option<(Option<Rat>, Option<Rat>)> {
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for c in cons {
        let a = &c.coeffs[v];
        let mut rest = c.rhs.clone();
        let mut others_zero = true;
        for (i, coef) in c.coeffs.iter().enumerate() {
            if i == v || coef.is_zero() {
                continue;
            }
            match fixed.iter().find(|(j, _)| *j == i) {
                Some((_, val)) => rest -= &(coef * val),
                None => {
                    others_zero = false;
                    break;
                }
            }
        }
        if !others_zero {
            continue;
        }
        if a.is_zero() {
            if rest.is_negative() {
                return None;
            }
            continue;
        }
        let bound = &rest / a;
        if a.is_positive() {
            if hi.as_ref().map_or(true, |h| &bound < h) {
                hi = Some(bound);
            }
        } else if lo.as_ref().map_or(true, |l| &bound > l) {
            lo = Some(bound);
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    Some((lo, hi))
}

fn pick(lo: Option<Rat>, hi: Option<Rat>) -> Rat {
    match (lo, hi) {
        (Some(l), Some(h)) => (&l + &h).half(),
        (Some(l), None) => l,
        (None, Some(h)) => h,
        (None, None) => Rat::zero(),
    }
}

/// Maximizes the last of three variables subject to `cons`; the caller must
/// supply an upper bound row for it. Returns a maximizing assignment.
pub fn maximize_last_of_three(cons: &[LinCon]) -> Option<[Rat; 3]> {
    debug_assert!(cons.iter().all(|c| c.coeffs.len() == 3));
    let after0 = eliminate(cons, 0)?;
    let after1 = eliminate(&after0, 1)?;
    let (lo2, hi2) = bounds_for(&after1, 2, &[])?;
    let x2 = hi2?; // objective must be bounded above by construction
    if let Some(l) = lo2 {
        if l > x2 {
            return None;
        }
    }
    let fixed2 = [(2usize, x2.clone())];
    let (lo1, hi1) = bounds_for(&after0, 1, &fixed2)?;
    let x1 = pick(lo1, hi1);
    let fixed12 = [(1usize, x1.clone()), (2usize, x2.clone())];
    let (lo0, hi0) = bounds_for(cons, 0, &fixed12)?;
    let x0 = pick(lo0, hi0);
    let sol = [x0, x1, x2];
    debug_assert!(cons.iter().all(|c| {
        let v = &(&(&c.coeffs[0] * &sol[0]) + &(&c.coeffs[1] * &sol[1]))
            + &(&c.coeffs[2] * &sol[2]);
        v <= c.rhs
    }));
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn con(a: i64, b: i64, c: i64, rhs: Rat) -> LinCon {
        LinCon::new(vec![Rat::int(a), Rat::int(b), Rat::int(c)], rhs)
    }

    #[test]
    fn simple_box() {
        // 0 <= x,y,z <= 5, z <= x + y, maximize z
        let cons = vec![
            con(-1, 0, 0, Rat::zero()),
            con(0, -1, 0, Rat::zero()),
            con(0, 0, -1, Rat::zero()),
            con(1, 0, 0, Rat::int(5)),
            con(0, 1, 0, Rat::int(5)),
            con(0, 0, 1, Rat::int(5)),
            con(-1, -1, 1, Rat::zero()),
        ];
        let sol = maximize_last_of_three(&cons).unwrap();
        assert_eq!(sol[2], Rat::int(5));
    }

    #[test]
    fn infeasible() {
        let cons = vec![
            con(1, 0, 0, Rat::int(-1)),
            con(-1, 0, 0, Rat::int(0)),
            con(0, 0, 1, Rat::int(5)),
        ];
        assert!(maximize_last_of_three(&cons).is_none());
    }

    #[test]
    fn coupled_maximum() {
        // z <= 2x, x <= 3/2, z <= y + 1, y <= 1, plus nonnegativity and cap
        let cons = vec![
            con(-1, 0, 0, Rat::zero()),
            con(0, -1, 0, Rat::zero()),
            con(0, 0, -1, Rat::zero()),
            con(-2, 0, 1, Rat::zero()),
            con(1, 0, 0, Rat::new(3, 2)),
            con(0, -1, 1, Rat::one()),
            con(0, 1, 0, Rat::one()),
            con(0, 0, 1, Rat::int(100)),
        ];
        let sol = maximize_last_of_three(&cons).unwrap();
        assert_eq!(sol[2], Rat::int(2));
        // witnesses satisfy everything
        assert!(sol[0] <= Rat::new(3, 2) && sol[1] <= Rat::one());
    }
}
