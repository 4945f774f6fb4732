use crate::poly::Monomial;

/// Drop generators divisible by another; sorts and dedups the rest.
pub fn minimalize(mut monos: Vec<Monomial>) -> Vec<Monomial> {
    monos.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    monos.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(monos.len());
    for m in monos {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out.sort();
    out
}

pub fn monomial_intersect(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    minimalize(a.iter().flat_map(|x| b.iter().map(move |y| x.lcm(y))).collect())
}

/// Generators of `(I : m)`.
pub fn monomial_colon(gens: &[Monomial], m: &Monomial) -> Vec<Monomial> {
    minimalize(gens.iter().map(|g| g.div(&g.gcd(m))).collect())
}

pub fn monomial_radical_gens(gens: &[Monomial]) -> Vec<Monomial> {
    minimalize(gens.iter().map(Monomial::radical).collect())
}

/// Membership in a monomial ideal.
pub fn monomial_contains(gens: &[Monomial], m: &Monomial) -> bool {
    gens.iter().any(|g| g.divides(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    fn m(s: &[(Var, i32)]) -> Monomial {
        Monomial::from_pairs(s.iter().copied())
    }

    #[test]
    fn basics() {
        let (x, y) = (Var::x(1), Var::y(1));
        let a = vec![m(&[(x, 1)])];
        let b = vec![m(&[(y, 1)])];
        assert_eq!(monomial_intersect(&a, &b), vec![m(&[(x, 1), (y, 1)])]);
        let g = vec![m(&[(y, 2), (x, 1)]), m(&[(y, 1), (x, 2)])];
        assert_eq!(monomial_colon(&monomial_colon(&g, &Monomial::var(y)), &Monomial::var(y)), vec![m(&[(x, 1)])]);
        assert_eq!(monomial_radical_gens(&g), vec![m(&[(x, 1), (y, 1)])]);
        assert_eq!(minimalize(vec![m(&[(x, 3)]), m(&[(x, 1)])]), vec![m(&[(x, 1)])]);
    }
}
