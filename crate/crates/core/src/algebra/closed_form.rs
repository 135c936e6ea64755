use std::fmt;
use std::str::FromStr;

use num_integer::binomial;
use num_traits::{One, Zero};
use serde_json::{json, Value as Json};

use crate::generators::{cyclic_group, divisor_poset, exponential_set, nerve, symmetric_group3, truncated_monoid};
use crate::simplicial::SimplicialSet;

use super::{convolve, hall_algebra, AlgebraError, BasisAlgebra, FnOnBasis, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Example {
    Group,
    Poset,
    Dirichlet,
    TruncatedPoly,
    Exponential,
}

impl Example {
    pub const ALL: [Example; 5] = [
        Example::Group,
        Example::Poset,
        Example::Dirichlet,
        Example::TruncatedPoly,
        Example::Exponential,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Example::Group => "group",
            Example::Poset => "poset",
            Example::Dirichlet => "dirichlet",
            Example::TruncatedPoly => "truncated_poly",
            Example::Exponential => "exponential",
        }
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Example {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Example::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| AlgebraError::UnknownExample(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub set: String,
    pub at: String,
    pub computed: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub example: Example,
    /// The sets the comparison ran on.
    pub sets: Vec<String>,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ClosedFormReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> Json {
        json!({
            "example": self.example.name(),
            "sets": self.sets,
            "holds": self.holds(),
            "entries_checked": self.checked,
            "mismatches": self.mismatches.iter().map(|m| json!({
                "set": m.set, "at": m.at, "computed": m.computed, "expected": m.expected,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "{}: {} entries over {}, {}\n",
            self.example,
            self.checked,
            self.sets.join(", "),
            if self.holds() { "all equal" } else { "MISMATCH" }
        );
        for m in &self.mismatches {
            out.push_str(&format!("  {} at {}: computed {}, expected {}\n", m.set, m.at, m.computed, m.expected));
        }
        out
    }
}

struct Tally {
    set: String,
    checked: usize,
    mismatches: Vec<Mismatch>,
}

impl Tally {
    fn new(set: &str) -> Self {
        Tally {
            set: set.into(),
            checked: 0,
            mismatches: Vec::new(),
        }
    }

    fn check(&mut self, at: impl FnOnce() -> String, computed: &str, expected: &str) {
        self.checked += 1;
        if computed != expected {
            self.mismatches.push(Mismatch {
                set: self.set.clone(),
                at: at(),
                computed: computed.into(),
                expected: expected.into(),
            });
        }
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// The product `x·y` of a table whose every product is a single basis
/// element or zero, compared against `expected` by label.
fn compare_monomial_table(
    t: &mut Tally,
    h: &BasisAlgebra,
    unit: &str,
    expected: impl Fn(&str, &str) -> Option<String>,
) {
    for x in 0..h.dim() {
        for y in 0..h.dim() {
            let want = expected(&h.basis[x], &h.basis[y]).unwrap_or_else(|| "0".into());
            t.check(|| format!("{}·{}", h.basis[x], h.basis[y]), &h.product_label(x, y), &want);
        }
    }
    t.check(|| "unit".into(), &super::render_combination(&h.basis, &h.unit), unit);
}

fn compare_functions(
    t: &mut Tally,
    s: &SimplicialSet,
    families: &[(&str, FnOnBasis)],
    expected: impl Fn(&FnOnBasis, &FnOnBasis, usize) -> Rational,
) -> Result<(), AlgebraError> {
    for (n1, f1) in families {
        for (n2, f2) in families {
            let got = convolve(s, f1, f2)?;
            for (x, label) in s.level(1).iter().enumerate() {
                t.check(
                    || format!("({n1} * {n2})({label})"),
                    &got.0[x].to_string(),
                    &expected(f1, f2, x).to_string(),
                );
            }
        }
    }
    Ok(())
}

fn group_exponent(label: &str) -> usize {
    match label {
        "e" => 0,
        "g" => 1,
        _ => label.trim_start_matches("g^").parse().expect("cyclic label"),
    }
}

fn perm(label: &str) -> [usize; 3] {
    let d: Vec<usize> = label.bytes().map(|b| (b - b'1') as usize).collect();
    [d[0], d[1], d[2]]
}

fn perm_label(p: [usize; 3]) -> String {
    p.iter().map(|&x| char::from(b'1' + x as u8)).collect()
}

/// `g ∘ f` as functions.
fn after(g: [usize; 3], f: [usize; 3]) -> [usize; 3] {
    [0, 1, 2].map(|x| g[f[x]])
}

fn inverse(p: [usize; 3]) -> [usize; 3] {
    let mut out = [0; 3];
    for (x, &y) in p.iter().enumerate() {
        out[y] = x;
    }
    out
}

/// Hall products against the opposite group law `x·y = yx`, and the
/// incidence product against `Σ_g ψ_1(g⁻¹h) ψ_2(g)`.
fn group() -> Result<ClosedFormReport, AlgebraError> {
    let mut tallies = Vec::new();

    let z2 = nerve(&cyclic_group(2), 3)?;
    let mut t = Tally::new("Z/2");
    let name = |a: usize| ["e", "g"][a % 2].to_string();
    compare_monomial_table(&mut t, &hall_algebra(&z2)?, "e", |x, y| {
        Some(name(group_exponent(y) + group_exponent(x)))
    });
    tallies.push(t);

    let s3 = nerve(&symmetric_group3(), 3)?;
    let mut t = Tally::new("S_3");
    compare_monomial_table(&mut t, &hall_algebra(&s3)?, "123", |x, y| {
        Some(perm_label(after(perm(y), perm(x))))
    });
    let basis = s3.level(1).to_vec();
    let families = [
        ("chi_123", FnOnBasis(basis.iter().map(|b| q((b == "123") as i64)).collect())),
        ("sign", FnOnBasis(basis.iter().map(|b| q(sign(perm(b)))).collect())),
        (
            "weight",
            FnOnBasis(basis.iter().enumerate().map(|(k, _)| frac(k as i64 + 1, 7 - k as i64)).collect()),
        ),
    ];
    compare_functions(&mut t, &s3, &families, |f1, f2, h| {
        let hp = perm(&basis[h]);
        basis
            .iter()
            .enumerate()
            .map(|(g, gl)| {
                let f = perm_label(after(inverse(perm(gl)), hp));
                let fi = basis.iter().position(|b| *b == f).expect("closed under composition");
                &f1.0[fi] * &f2.0[g]
            })
            .fold(Rational::zero(), |a, b| a + b)
    })?;
    tallies.push(t);
    Ok(finish(Example::Group, tallies))
}

fn sign(p: [usize; 3]) -> i64 {
    let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    if inversions % 2 == 0 { 1 } else { -1 }
}

fn arrow(label: &str) -> (u64, u64) {
    let (a, b) = label.split_once("->").expect("poset morphism label");
    (a.parse().expect("integer"), b.parse().expect("integer"))
}

fn divisor_families(basis: &[String], f: &[(&'static str, fn(u64, u64) -> Rational)]) -> Vec<(&'static str, FnOnBasis)> {
    f.iter()
        .map(|&(name, g)| {
            (
                name,
                FnOnBasis(basis.iter().map(|b| {
                    let (x, y) = arrow(b);
                    g(x, y)
                }).collect()),
            )
        })
        .collect()
}

/// Rota's product `Σ_{x ≤ z ≤ y} ψ_1(x, z) ψ_2(z, y)` on the divisors of
/// 12, and the Hall product `(a→b)(b→c) = a→c`.
fn poset() -> Result<ClosedFormReport, AlgebraError> {
    let s = nerve(&divisor_poset(12), 3)?;
    let mut t = Tally::new("divisors of 12");
    let h = hall_algebra(&s)?;
    compare_monomial_table(&mut t, &h, "1->1 + 2->2 + 3->3 + 4->4 + 6->6 + 12->12", |x, y| {
        let ((a, b), (c, d)) = (arrow(x), arrow(y));
        (b == c).then(|| format!("{a}->{d}"))
    });
    let basis = s.level(1).to_vec();
    let families = divisor_families(
        &basis,
        &[
            ("zeta", |_, _| q(1)),
            ("delta", |x, y| q((x == y) as i64)),
            ("ratio", |x, y| q((y / x) as i64)),
            ("sum", |x, y| q(x as i64 + 2 * y as i64)),
            ("inverse", |x, y| frac(1, (x + y) as i64)),
        ],
    );
    compare_functions(&mut t, &s, &families, |f1, f2, e| {
        let (x, y) = arrow(&basis[e]);
        let at = |f: &FnOnBasis, a: u64, b: u64| {
            let i = basis.iter().position(|l| *l == format!("{a}->{b}")).expect("comparable pair");
            f.0[i].clone()
        };
        (1..=y)
            .filter(|z| z % x == 0 && y % z == 0)
            .map(|z| at(f1, x, z) * at(f2, z, y))
            .fold(Rational::zero(), |a, b| a + b)
    })?;
    Ok(finish(Example::Poset, vec![t]))
}

/// Arithmetic functions `ψ` lifted to `ψ̂(x, y) = ψ(y/x)`, convolved, and
/// compared with the Dirichlet product `Σ_{d | m} ψ_1(d) ψ_2(m/d)`.
fn dirichlet() -> Result<ClosedFormReport, AlgebraError> {
    let s = nerve(&divisor_poset(12), 3)?;
    let basis = s.level(1).to_vec();
    let arithmetic: [(&str, fn(u64) -> Rational); 5] = [
        ("one", |_| q(1)),
        ("id", |n| q(n as i64)),
        ("square", |n| q((n * n) as i64)),
        ("reciprocal", |n| frac(1, n as i64)),
        ("mod3", |n| q((n % 3) as i64 + 1)),
    ];
    let lifted: Vec<(&str, FnOnBasis)> = arithmetic
        .iter()
        .map(|&(name, psi)| {
            (
                name,
                FnOnBasis(basis.iter().map(|b| {
                    let (x, y) = arrow(b);
                    psi(y / x)
                }).collect()),
            )
        })
        .collect();
    let mut t = Tally::new("divisors of 12");
    for (i, (n1, f1)) in lifted.iter().enumerate() {
        for (j, (n2, f2)) in lifted.iter().enumerate() {
            let got = convolve(&s, f1, f2)?;
            for (e, label) in basis.iter().enumerate() {
                let (x, y) = arrow(label);
                let m = y / x;
                let want = (1..=m)
                    .filter(|d| m % d == 0)
                    .map(|d| arithmetic[i].1(d) * arithmetic[j].1(m / d))
                    .fold(Rational::zero(), |a, b| a + b);
                t.check(|| format!("({n1} * {n2})({label})"), &got.0[e].to_string(), &want.to_string());
            }
        }
    }
    Ok(finish(Example::Dirichlet, vec![t]))
}

fn power(label: &str) -> usize {
    match label {
        "1" => 0,
        "x" => 1,
        _ => label.trim_start_matches("x^").parse().expect("monomial label"),
    }
}

/// The Hall algebra of `{1, x, …, x^L}` against `ℚ[x]/⟨x^{L+1}⟩`, on the
/// monomial table and on products of dense polynomials.
fn truncated_poly() -> Result<ClosedFormReport, AlgebraError> {
    let mut tallies = Vec::new();
    for l in 1..=3 {
        let s = nerve(&truncated_monoid(l), 3)?;
        let h = hall_algebra(&s)?;
        let mut t = Tally::new(&format!("L={l}"));
        let mono = |k: usize| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        compare_monomial_table(&mut t, &h, "1", |x, y| {
            let k = power(x) + power(y);
            (k <= l).then(|| mono(k))
        });
        let polys: Vec<Vec<Rational>> = vec![
            (0..=l).map(|k| q(k as i64 + 1)).collect(),
            (0..=l).map(|k| frac(1, k as i64 + 2)).collect(),
            (0..=l).map(|k| q(if k % 2 == 0 { 1 } else { -3 })).collect(),
        ];
        let in_basis = |p: &[Rational]| -> Vec<Rational> {
            h.basis.iter().map(|b| p[power(b)].clone()).collect()
        };
        for (i, a) in polys.iter().enumerate() {
            for (j, b) in polys.iter().enumerate() {
                let mut want = vec![Rational::zero(); l + 1];
                for (p, ap) in a.iter().enumerate() {
                    for (r, br) in b.iter().enumerate() {
                        if p + r <= l {
                            want[p + r] += ap * br;
                        }
                    }
                }
                let got = h.multiply(&in_basis(a), &in_basis(b));
                for (z, label) in h.basis.iter().enumerate() {
                    t.check(
                        || format!("coefficient of {label} in p{i}·p{j}"),
                        &got[z].to_string(),
                        &want[power(label)].to_string(),
                    );
                }
            }
        }
        tallies.push(t);
    }
    Ok(finish(Example::TruncatedPoly, tallies))
}

fn size(label: &str) -> usize {
    label[1..label.find(';').expect("exponential label")].parse().expect("integer")
}

/// `(ψ_1 * ψ_2)(m) = Σ_k binom(m, k) ψ_1(k) ψ_2(m − k)` for `m ≤ 3`.
fn exponential() -> Result<ClosedFormReport, AlgebraError> {
    let s = exponential_set(3, 3)?;
    let basis = s.level(1).to_vec();
    let seqs: [(&str, fn(usize) -> Rational); 5] = [
        ("one", |_| q(1)),
        ("k", |k| q(k as i64)),
        ("pow2", |k| q(1 << k)),
        ("harmonic", |k| frac(1, k as i64 + 1)),
        ("alternating", |k| q(if k % 2 == 0 { 1 } else { -1 })),
    ];
    let families: Vec<(&str, FnOnBasis)> = seqs
        .iter()
        .map(|&(name, psi)| (name, FnOnBasis(basis.iter().map(|b| psi(size(b))).collect())))
        .collect();
    let mut t = Tally::new("M=3");
    for (i, (n1, f1)) in families.iter().enumerate() {
        for (j, (n2, f2)) in families.iter().enumerate() {
            let got = convolve(&s, f1, f2)?;
            for (x, label) in basis.iter().enumerate() {
                let m = size(label);
                let want = (0..=m)
                    .map(|k| q(binomial(m, k) as i64) * seqs[i].1(k) * seqs[j].1(m - k))
                    .fold(Rational::zero(), |a, b| a + b);
                t.check(|| format!("({n1} * {n2})({label})"), &got.0[x].to_string(), &want.to_string());
            }
        }
    }
    Ok(finish(Example::Exponential, vec![t]))
}

fn finish(example: Example, tallies: Vec<Tally>) -> ClosedFormReport {
    ClosedFormReport {
        example,
        sets: tallies.iter().map(|t| t.set.clone()).collect(),
        checked: tallies.iter().map(|t| t.checked).sum(),
        mismatches: tallies.into_iter().flat_map(|t| t.mismatches).collect(),
    }
}

pub fn compare_closed_form(example_id: &str) -> Result<ClosedFormReport, AlgebraError> {
    match example_id.parse()? {
        Example::Group => group(),
        Example::Poset => poset(),
        Example::Dirichlet => dirichlet(),
        Example::TruncatedPoly => truncated_poly(),
        Example::Exponential => exponential(),
    }
}

/// `ζ * ζ` at `(x, y)` on the divisors of `n`.
pub fn zeta_squared(n: u64, x: u64, y: u64) -> Result<Rational, AlgebraError> {
    let s = nerve(&divisor_poset(n), 3)?;
    let k = s.level_size(1);
    let zeta = FnOnBasis::constant(k, Rational::one());
    let z = convolve(&s, &zeta, &zeta)?;
    let i = s.find(1, &format!("{x}->{y}")).ok_or_else(|| AlgebraError::UnknownExample(format!("{x}->{y}")))?;
    Ok(z.0[i].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_matches() {
        for e in Example::ALL {
            let r = compare_closed_form(e.name()).unwrap();
            assert!(r.holds(), "{}", r.render());
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn unknown_example() {
        assert!(matches!(compare_closed_form("matrix"), Err(AlgebraError::UnknownExample(_))));
    }

    #[test]
    fn zeta_squared_counts_the_interval() {
        // 1, 2, 3, 4, 6, 12
        assert_eq!(zeta_squared(12, 1, 12).unwrap(), q(6));
        assert_eq!(zeta_squared(12, 2, 12).unwrap(), q(4));
    }

    #[test]
    fn s3_distinguishes_the_opposite_law() {
        let h = hall_algebra(&nerve(&symmetric_group3(), 3).unwrap()).unwrap();
        let (a, b) = (h.index("213").unwrap(), h.index("132").unwrap());
        // first swap 1,2 then swap 2,3: 1→2→3, 2→1, 3→3→2
        assert_eq!(h.product_label(a, b), "312");
        assert_ne!(h.product_label(a, b), h.product_label(b, a));
    }
}
