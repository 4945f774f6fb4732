use num_bigint::BigInt;

use super::{Monomial, Poly, Var};

/// Exchange `x_i` and `x_{i+1}`.
pub fn swap_x(i: usize, f: &Poly) -> Poly {
    let (a, b) = (Var::x(i), Var::x(i + 1));
    Poly::from_terms(f.terms().map(|(m, c)| {
        let pairs = m.iter().map(|(v, e)| {
            if v == a {
                (b, e)
            } else if v == b {
                (a, e)
            } else {
                (v, e)
            }
        });
        (Monomial::from_pairs(pairs), c.clone())
    }))
}

/// `(f - s_i f) / (x_i - x_{i+1})`, computed term by term so the division is
/// exact by construction.
pub fn divided_difference(i: usize, f: &Poly) -> Poly {
    let (xa, xb) = (Var::x(i), Var::x(i + 1));
    let mut out = Poly::zero();
    for (m, c) in f.terms() {
        let (a, b) = (m.exponent(xa), m.exponent(xb));
        if a == b {
            continue;
        }
        let rest = m.without(xa).without(xb);
        let (hi, lo, sign) = if a > b { (a, b, 1) } else { (b, a, -1) };
        // (x^hi y^lo - x^lo y^hi)/(x - y) = sum_{k<hi-lo} x^{hi-1-k} y^{lo+k}
        for k in 0..hi - lo {
            let mono = rest.mul(&Monomial::from_pairs([(xa, hi - 1 - k), (xb, lo + k)]));
            out.add_term(mono, c * BigInt::from(sign));
        }
    }
    out
}

/// Isobaric divided difference `(x_{i+1} f - x_i s_i f) / (x_{i+1} - x_i)`.
pub fn demazure_operator(i: usize, f: &Poly) -> Poly {
    let shifted = f.mul_monomial(&Monomial::var(Var::x(i + 1)));
    -&divided_difference(i, &shifted)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn divided_difference_basics() {
        assert_eq!(divided_difference(1, &p("x1")), Poly::one());
        assert_eq!(divided_difference(1, &p("x1^2")), p("x1 + x2"));
        assert!(divided_difference(1, &p("x1*x2 + y3")).is_zero());
        assert_eq!(divided_difference(2, &p("x1*x2^2*y1^-1")), p("x1*x2*y1^-1 + x1*x3*y1^-1"));
    }

    #[test]
    fn demazure_idempotent() {
        let f = p("x1^2*x2");
        let once = demazure_operator(1, &f);
        assert_eq!(demazure_operator(1, &once), once);
        let sym = p("x1 + x2 + x1*x2*y4^-2");
        assert_eq!(demazure_operator(1, &sym), sym);
        assert_eq!(demazure_operator(1, &p("1 - x1*y1^-1")), Poly::one());
    }
}
