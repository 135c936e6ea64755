//! Hall algebras, incidence coalgebras and incidence algebras of finite
//! 2-Segal sets, over exact rationals.

mod closed_form;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value as Json};
use thiserror::Error;

use crate::jsonio::{Doc, LoadError};
use crate::segal::{check_2segal, SegalError};
use crate::simplicial::SimplicialSet;

pub use closed_form::{compare_closed_form, zeta_squared, ClosedFormReport, Example, Mismatch};

pub type Rational = BigRational;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Segal(#[from] SegalError),
    #[error("the Hall algebra needs levels up to 3, the set stops at {0}")]
    TooShort(usize),
    #[error("unknown example {0:?}; expected one of group, poset, dirichlet, truncated_poly, exponential")]
    UnknownExample(String),
    #[error("function has {got} values but the basis has {expected} elements")]
    Length { expected: usize, got: usize },
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Simplicial(#[from] crate::simplicial::SimplicialError),
}

/// A finite linear combination of basis elements with non-negative
/// integer coefficients, as a dense vector.
pub type Combination = Vec<u64>;

/// `k[X_1]` with `x·y = Σ d_1 ω` over `T_2 ω = (x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisAlgebra {
    pub basis: Vec<String>,
    /// `structure[x][y]` is `x·y`.
    pub structure: Vec<Vec<Combination>>,
    pub unit: Combination,
}

/// `k[X_1]` with `Δ(x) = Σ d_2 ω ⊗ d_0 ω` over `d_1 ω = x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCoalgebra {
    pub basis: Vec<String>,
    /// `delta[x]` maps `(a, b)` to the coefficient of `a ⊗ b`.
    pub delta: Vec<BTreeMap<(usize, usize), u64>>,
    pub counit: Vec<u64>,
}

/// A total function `X_1 → ℚ`, by basis index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnOnBasis(pub Vec<Rational>);

pub fn hall_algebra(s: &SimplicialSet) -> Result<BasisAlgebra, AlgebraError> {
    if s.top() < 3 {
        return Err(AlgebraError::TooShort(s.top()));
    }
    if let Some(f) = check_2segal(s)?.first_failure() {
        return Err(SegalError::NotTwoSegal(f.clone()).into());
    }
    let n = s.level_size(1);
    let mut structure = vec![vec![vec![0u64; n]; n]; n];
    for w in 0..s.level_size(2) {
        structure[s.face(2, 2, w)][s.face(2, 0, w)][s.face(2, 1, w)] += 1;
    }
    let mut unit = vec![0u64; n];
    for u in 0..s.level_size(0) {
        unit[s.degeneracy(0, 0, u)] += 1;
    }
    Ok(BasisAlgebra {
        basis: s.level(1).to_vec(),
        structure,
        unit,
    })
}

pub fn incidence_coalgebra(s: &SimplicialSet) -> BasisCoalgebra {
    let n = s.level_size(1);
    let mut delta = vec![BTreeMap::new(); n];
    for w in 0..s.level_size(2) {
        *delta[s.face(2, 1, w)]
            .entry((s.face(2, 2, w), s.face(2, 0, w)))
            .or_insert(0) += 1;
    }
    let mut counit = vec![0u64; n];
    for u in 0..s.level_size(0) {
        counit[s.degeneracy(0, 0, u)] = 1;
    }
    BasisCoalgebra {
        basis: s.level(1).to_vec(),
        delta,
        counit,
    }
}

/// `(ψ_1 * ψ_2)(x) = Σ ψ_1(d_2 ω) ψ_2(d_0 ω)` over `d_1 ω = x`.
pub fn convolve(s: &SimplicialSet, psi1: &FnOnBasis, psi2: &FnOnBasis) -> Result<FnOnBasis, AlgebraError> {
    let n = s.level_size(1);
    for psi in [psi1, psi2] {
        if psi.0.len() != n {
            return Err(AlgebraError::Length {
                expected: n,
                got: psi.0.len(),
            });
        }
    }
    let mut out = vec![Rational::zero(); n];
    for w in 0..s.level_size(2) {
        out[s.face(2, 1, w)] += &psi1.0[s.face(2, 2, w)] * &psi2.0[s.face(2, 0, w)];
    }
    Ok(FnOnBasis(out))
}

fn add_scaled(acc: &mut [u64], v: &[u64], k: u64) {
    if k != 0 {
        for (a, b) in acc.iter_mut().zip(v) {
            *a += k * b;
        }
    }
}

fn basis_vector(n: usize, x: usize) -> Combination {
    let mut v = vec![0; n];
    v[x] = 1;
    v
}

fn render_combination(basis: &[String], v: &[u64]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(z, &c)| if c == 1 { basis[z].clone() } else { format!("{c}·{}", basis[z]) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn combination_json(basis: &[String], v: &[u64]) -> Json {
    Json::Array(
        v.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(z, &c)| json!([basis[z], c]))
            .collect(),
    )
}

/// Rows of cells padded to a common width per column.
fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell}{}", " ".repeat(widths[c] - cell.chars().count())))
            .collect();
        out.push_str(line.join(" | ").trim_end());
        out.push('\n');
    }
    out
}

impl BasisAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (x, ax) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (y, by) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let k = ax * by;
                for (z, &c) in self.structure[x][y].iter().enumerate().filter(|(_, &c)| c != 0) {
                    out[z] += &k * Rational::from_integer(c.into());
                }
            }
        }
        out
    }

    fn times_basis(&self, v: &[u64], y: usize) -> Combination {
        let mut out = vec![0; self.dim()];
        for (x, &c) in v.iter().enumerate() {
            add_scaled(&mut out, &self.structure[x][y], c);
        }
        out
    }

    fn basis_times(&self, x: usize, v: &[u64]) -> Combination {
        let mut out = vec![0; self.dim()];
        for (y, &c) in v.iter().enumerate() {
            add_scaled(&mut out, &self.structure[x][y], c);
        }
        out
    }

    /// Associativity over every basis triple and both unit laws over every
    /// basis element.
    pub fn verify_axioms(&self) -> AxiomReport {
        let n = self.dim();
        let mut report = AxiomReport::default();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let left = self.times_basis(&self.structure[x][y], z);
                    let right = self.basis_times(x, &self.structure[y][z]);
                    if left != right {
                        report.associativity.push(AxiomViolation {
                            at: vec![self.basis[x].clone(), self.basis[y].clone(), self.basis[z].clone()],
                            left: render_combination(&self.basis, &left),
                            right: render_combination(&self.basis, &right),
                        });
                    }
                }
            }
            let e = basis_vector(n, x);
            for (laws, product) in [
                (&mut report.left_unit, self.times_basis(&self.unit, x)),
                (&mut report.right_unit, self.basis_times(x, &self.unit)),
            ] {
                if product != e {
                    laws.push(AxiomViolation {
                        at: vec![self.basis[x].clone()],
                        left: render_combination(&self.basis, &product),
                        right: self.basis[x].clone(),
                    });
                }
            }
        }
        report
    }

    pub fn product_label(&self, x: usize, y: usize) -> String {
        render_combination(&self.basis, &self.structure[x][y])
    }

    pub fn to_json(&self) -> Json {
        json!({
            "basis": self.basis,
            "unit": combination_json(&self.basis, &self.unit),
            "table": self.structure.iter().map(|row| row.iter().map(|v| combination_json(&self.basis, v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    /// Row `x`, column `y` holds `x·y`.
    pub fn render_table(&self) -> String {
        let mut rows = vec![std::iter::once("·".to_string()).chain(self.basis.iter().cloned()).collect::<Vec<_>>()];
        for x in 0..self.dim() {
            let mut row = vec![self.basis[x].clone()];
            row.extend((0..self.dim()).map(|y| self.product_label(x, y)));
            rows.push(row);
        }
        let mut out = aligned(&rows);
        let _ = writeln!(out, "unit: {}", render_combination(&self.basis, &self.unit));
        out
    }
}

impl BasisCoalgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn delta_left(&self, x: usize) -> BTreeMap<(usize, usize, usize), u64> {
        let mut out = BTreeMap::new();
        for (&(a, b), &c) in &self.delta[x] {
            for (&(p, q), &d) in &self.delta[a] {
                *out.entry((p, q, b)).or_insert(0) += c * d;
            }
        }
        out
    }

    fn delta_right(&self, x: usize) -> BTreeMap<(usize, usize, usize), u64> {
        let mut out = BTreeMap::new();
        for (&(a, b), &c) in &self.delta[x] {
            for (&(p, q), &d) in &self.delta[b] {
                *out.entry((a, p, q)).or_insert(0) += c * d;
            }
        }
        out
    }

    fn render_triples(&self, m: &BTreeMap<(usize, usize, usize), u64>) -> String {
        let terms: Vec<String> = m
            .iter()
            .filter(|(_, &c)| c != 0)
            .map(|(&(a, b, c), &k)| {
                let t = format!("{}⊗{}⊗{}", self.basis[a], self.basis[b], self.basis[c]);
                if k == 1 { t } else { format!("{k}·{t}") }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn render_delta(&self, x: usize) -> String {
        let terms: Vec<String> = self.delta[x]
            .iter()
            .map(|(&(a, b), &k)| {
                let t = format!("{}⊗{}", self.basis[a], self.basis[b]);
                if k == 1 { t } else { format!("{k}·{t}") }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Coassociativity and both counit laws over every basis element.
    pub fn verify_axioms(&self) -> AxiomReport {
        let n = self.dim();
        let mut report = AxiomReport::default();
        for x in 0..n {
            let (l, r) = (self.delta_left(x), self.delta_right(x));
            let nonzero = |m: &BTreeMap<(usize, usize, usize), u64>| -> BTreeMap<(usize, usize, usize), u64> {
                m.iter().filter(|(_, &c)| c != 0).map(|(k, v)| (*k, *v)).collect()
            };
            if nonzero(&l) != nonzero(&r) {
                report.associativity.push(AxiomViolation {
                    at: vec![self.basis[x].clone()],
                    left: self.render_triples(&l),
                    right: self.render_triples(&r),
                });
            }
            let mut left = vec![0u64; n];
            let mut right = vec![0u64; n];
            for (&(a, b), &c) in &self.delta[x] {
                left[b] += self.counit[a] * c;
                right[a] += self.counit[b] * c;
            }
            let e = basis_vector(n, x);
            for (laws, v) in [(&mut report.left_unit, left), (&mut report.right_unit, right)] {
                if v != e {
                    laws.push(AxiomViolation {
                        at: vec![self.basis[x].clone()],
                        left: render_combination(&self.basis, &v),
                        right: self.basis[x].clone(),
                    });
                }
            }
        }
        report
    }

    pub fn to_json(&self) -> Json {
        let delta: Vec<Json> = self
            .delta
            .iter()
            .map(|d| {
                Json::Array(
                    d.iter()
                        .map(|(&(a, b), &k)| json!([self.basis[a], self.basis[b], k]))
                        .collect(),
                )
            })
            .collect();
        json!({
            "basis": self.basis,
            "delta": delta,
            "counit": self.counit,
        })
    }

    pub fn render_table(&self) -> String {
        let mut rows = vec![vec!["x".to_string(), "Δ(x)".to_string(), "ε(x)".to_string()]];
        for x in 0..self.dim() {
            rows.push(vec![self.basis[x].clone(), self.render_delta(x), self.counit[x].to_string()]);
        }
        aligned(&rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    /// Basis labels the law was evaluated at.
    pub at: Vec<String>,
    pub left: String,
    pub right: String,
}

/// For coalgebras `associativity` holds coassociativity failures and the
/// unit lists hold counit failures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub associativity: Vec<AxiomViolation>,
    pub left_unit: Vec<AxiomViolation>,
    pub right_unit: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.associativity.is_empty() && self.left_unit.is_empty() && self.right_unit.is_empty()
    }

    pub fn to_json(&self) -> Json {
        let list = |v: &[AxiomViolation]| -> Vec<Json> {
            v.iter()
                .map(|w| json!({"at": w.at, "left": w.left, "right": w.right}))
                .collect()
        };
        json!({
            "holds": self.holds(),
            "associativity": list(&self.associativity),
            "left_unit": list(&self.left_unit),
            "right_unit": list(&self.right_unit),
        })
    }
}

/// Checks `χ_x * χ_y = χ_{x·y}` for every basis pair; returns the failing
/// pairs.
pub fn characteristic_embedding_failures(
    s: &SimplicialSet,
    hall: &BasisAlgebra,
) -> Result<Vec<(String, String)>, AlgebraError> {
    let n = hall.dim();
    let chi = |x: usize| {
        let mut v = vec![Rational::zero(); n];
        v[x] = Rational::one();
        FnOnBasis(v)
    };
    let mut bad = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let lhs = convolve(s, &chi(x), &chi(y))?;
            let rhs: Vec<Rational> = hall.structure[x][y]
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect();
            if lhs.0 != rhs {
                bad.push((hall.basis[x].clone(), hall.basis[y].clone()));
            }
        }
    }
    Ok(bad)
}

impl FnOnBasis {
    pub fn constant(n: usize, c: Rational) -> Self {
        FnOnBasis(vec![c; n])
    }

    /// `{"values": {"label": "p/q", ...}}`; every basis label must occur.
    pub fn from_json(raw: &str, basis: &[String]) -> Result<Self, LoadError> {
        let doc = Doc::parse(raw)?;
        let root = doc.root()?;
        let values = doc
            .field(root, "values")?
            .as_object()
            .ok_or_else(|| doc.err("values", "expected an object from basis labels to rationals"))?;
        for key in values.keys() {
            if !basis.contains(key) {
                return Err(doc.err_within("values", key, format!("{key:?} is not a basis element")));
            }
        }
        basis
            .iter()
            .map(|b| {
                let v = values
                    .get(b)
                    .ok_or_else(|| doc.err("values", format!("no value for basis element {b:?}")))?;
                parse_rational(v).ok_or_else(|| doc.err_within("values", b, format!("value for {b:?} is not a rational")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(FnOnBasis)
    }

    pub fn to_json(&self, basis: &[String]) -> Json {
        let mut values = Map::new();
        for (b, v) in basis.iter().zip(&self.0) {
            values.insert(b.clone(), Json::String(v.to_string()));
        }
        json!({ "values": values })
    }

    pub fn render(&self, basis: &[String]) -> String {
        let rows: Vec<Vec<String>> = basis
            .iter()
            .zip(&self.0)
            .map(|(b, v)| vec![b.clone(), v.to_string()])
            .collect();
        aligned(&rows)
    }
}

fn parse_rational(v: &Json) -> Option<Rational> {
    match v {
        Json::Number(n) => n.as_i64().map(|i| Rational::from_integer(i.into())),
        Json::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cyclic_group, exponential_set, nerve, point, truncated_monoid};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn truncated_polynomials() {
        let s = nerve(&truncated_monoid(3), 3).unwrap();
        let h = hall_algebra(&s).unwrap();
        let i = |l: &str| h.index(l).unwrap();
        assert_eq!(h.product_label(i("x"), i("x^2")), "x^3");
        assert_eq!(h.product_label(i("x^2"), i("x^2")), "0");
        assert_eq!(render_combination(&h.basis, &h.unit), "1");
        assert!(h.verify_axioms().holds());
    }

    #[test]
    fn cyclic_group_algebra() {
        let h = hall_algebra(&nerve(&cyclic_group(2), 3).unwrap()).unwrap();
        assert_eq!(h.product_label(1, 1), "e");
        assert_eq!(render_combination(&h.basis, &h.unit), "e");
    }

    #[test]
    fn exponential_square_of_one() {
        let s = exponential_set(2, 3).unwrap();
        let h = hall_algebra(&s).unwrap();
        let one = h.index("(1;{1})").unwrap();
        assert_eq!(h.product_label(one, one), "2·(2;{1,2})");
        assert!(h.verify_axioms().holds());
    }

    #[test]
    fn mutated_constant_is_caught() {
        let mut h = hall_algebra(&nerve(&truncated_monoid(3), 3).unwrap()).unwrap();
        let (x, x2) = (h.index("x").unwrap(), h.index("x^2").unwrap());
        h.structure[x][x2] = vec![0; h.dim()];
        let r = h.verify_axioms();
        assert!(!r.holds());
        let w = &r.associativity[0];
        assert_eq!(w.at.len(), 3);
        assert_ne!(w.left, w.right);
    }

    #[test]
    fn singleton_algebra() {
        let h = hall_algebra(&point(3)).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(h.verify_axioms().holds());
        assert!(incidence_coalgebra(&point(3)).verify_axioms().holds());
    }

    #[test]
    fn coalgebra_of_z2() {
        let c = incidence_coalgebra(&nerve(&cyclic_group(2), 3).unwrap());
        assert_eq!(c.render_delta(1), "e⊗g + g⊗e");
        assert_eq!(c.counit, vec![1, 0]);
        assert!(c.verify_axioms().holds());
        let l = incidence_coalgebra(&nerve(&truncated_monoid(3), 3).unwrap());
        assert_eq!(l.counit[l.basis.iter().position(|b| b == "x").unwrap()], 0);
    }

    #[test]
    fn delta_at_unit_is_neutral() {
        let s = nerve(&cyclic_group(3), 3).unwrap();
        let mut delta = vec![q(0); 3];
        delta[0] = q(1);
        let psi = FnOnBasis(vec![q(5), Rational::new(1.into(), 3.into()), q(-2)]);
        let delta = FnOnBasis(delta);
        assert_eq!(convolve(&s, &delta, &psi).unwrap(), psi);
        assert_eq!(convolve(&s, &psi, &delta).unwrap(), psi);
    }

    #[test]
    fn embedding_is_multiplicative() {
        for s in [nerve(&truncated_monoid(3), 3).unwrap(), exponential_set(3, 3).unwrap()] {
            let h = hall_algebra(&s).unwrap();
            assert!(characteristic_embedding_failures(&s, &h).unwrap().is_empty());
        }
    }

    #[test]
    fn multiply_extends_bilinearly() {
        let h = hall_algebra(&nerve(&truncated_monoid(2), 3).unwrap()).unwrap();
        // (1 + x)^2 = 1 + 2x + x^2
        let a = vec![q(1), q(1), q(0)];
        assert_eq!(h.multiply(&a, &a), vec![q(1), q(2), q(1)]);
    }

    #[test]
    fn function_json() {
        let basis = vec!["a".to_string(), "b".to_string()];
        let f = FnOnBasis::from_json(r#"{"values": {"a": "1/2", "b": 3}}"#, &basis).unwrap();
        assert_eq!(f.0, vec![Rational::new(1.into(), 2.into()), q(3)]);
        let back = FnOnBasis::from_json(&f.to_json(&basis).to_string(), &basis).unwrap();
        assert_eq!(back, f);
        let err = FnOnBasis::from_json("{\n  \"values\": {\n    \"a\": 1\n  }\n}", &basis).unwrap_err();
        assert!(err.to_string().contains("\"b\""), "{err}");
        assert!(FnOnBasis::from_json(r#"{"values": {"a": 1, "b": 2, "c": 0}}"#, &basis).is_err());
    }

    #[test]
    fn table_is_aligned() {
        let h = hall_algebra(&nerve(&cyclic_group(2), 3).unwrap()).unwrap();
        assert_eq!(h.render_table(), "· | e | g\ne | e | g\ng | g | e\nunit: e\n");
    }
}
