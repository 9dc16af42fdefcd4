use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::matrix::combinations;
use crate::algebra::serial::{from_terms, to_terms, TermJson};
use crate::algebra::{AlgebraError, Coefficient, Derivation, GeomPoly, Layer, Matrix, Monomial, RatFn, VarTable};

use super::base::{BaseRingS, Chart, ModuleVector};
use super::engine::{change_of_basis_det, derivation_matrix, kernel_basis};
use super::QuotientError;

#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub name: String,
    pub poly: GeomPoly,
}

/// Generators `u_a, u_b, u_c, t_a, t_b, t_c`, relations among them, and the
/// embedding into the chart ring of the quadric.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub chart: Chart,
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
    /// Image of each generator, in generator order, in the chart ring.
    pub embedding: Vec<GeomPoly>,
    r_table: Arc<VarTable>,
}

/// Table of `K[u_a, u_b, u_c, t_a, t_b, t_c]` for a chart.
pub fn r_table(s: &BaseRingS) -> Result<Arc<VarTable>, AlgebraError> {
    let names = generator_names(s.chart());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    s.m_table().with_geometric(&refs)
}

pub fn generator_names(chart: Chart) -> Vec<String> {
    chart.names("u").into_iter().chain(chart.names("t")).collect()
}

impl Presentation {
    pub fn new(s: &BaseRingS, relations: Vec<Relation>, embedding: Vec<GeomPoly>) -> Result<Self, AlgebraError> {
        let r_table = r_table(s)?;
        if embedding.len() != 6 {
            return Err(AlgebraError::InvalidTable("embedding needs six images".into()));
        }
        let relations = relations
            .into_iter()
            .map(|r| Ok(Relation { name: r.name, poly: r.poly.rename_into(&r_table)? }))
            .collect::<Result<_, AlgebraError>>()?;
        let embedding = embedding.iter().map(|e| e.rename_into(s.m_table())).collect::<Result<_, _>>()?;
        Ok(Presentation { chart: s.chart(), generators: generator_names(s.chart()), relations, embedding, r_table })
    }

    pub fn r_table(&self) -> &Arc<VarTable> {
        &self.r_table
    }

    pub fn relation(&self, name: &str) -> Option<&GeomPoly> {
        self.relations.iter().find(|r| r.name == name).map(|r| &r.poly)
    }

    /// Image of a polynomial in the generators under the embedding.
    pub fn embed(&self, f: &GeomPoly, s: &BaseRingS) -> Result<GeomPoly, AlgebraError> {
        f.rename_into(&self.r_table)?.compose_into(s.m_table(), &self.embedding)
    }

    pub fn to_json(&self) -> Value {
        let relations: Vec<Value> =
            self.relations.iter().map(|r| json!({ "name": r.name, "terms": to_terms(&r.poly) })).collect();
        let embedding: BTreeMap<&str, Value> =
            self.generators.iter().zip(&self.embedding).map(|(g, e)| (g.as_str(), json!(to_terms(e)))).collect();
        json!({
            "chart": self.chart.i0,
            "generators": self.generators,
            "relations": relations,
            "embedding": embedding,
        })
    }

    pub fn from_json(value: &Value) -> Result<(Self, BaseRingS), QuotientError> {
        let bad = |m: &str| QuotientError::Check(format!("malformed presentation: {m}"));
        let chart = value.get("chart").and_then(Value::as_u64).ok_or_else(|| bad("chart"))?;
        let s = BaseRingS::new(Chart::new(chart as usize)?)?;
        let gens: Vec<String> =
            serde_json::from_value(value.get("generators").cloned().ok_or_else(|| bad("generators"))?)
                .map_err(|e| bad(&e.to_string()))?;
        if gens != generator_names(s.chart()) {
            return Err(bad("generator names do not match the chart"));
        }
        let rt = r_table(&s)?;
        let mut relations = Vec::new();
        for r in value.get("relations").and_then(Value::as_array).ok_or_else(|| bad("relations"))? {
            let name = r.get("name").and_then(Value::as_str).ok_or_else(|| bad("relation name"))?;
            let terms: Vec<TermJson> = serde_json::from_value(r.get("terms").cloned().ok_or_else(|| bad("terms"))?)
                .map_err(|e| bad(&e.to_string()))?;
            relations.push(Relation { name: name.to_string(), poly: from_terms(&rt, &terms)? });
        }
        let emb = value.get("embedding").and_then(Value::as_object).ok_or_else(|| bad("embedding"))?;
        let mut embedding = Vec::new();
        for g in &gens {
            let terms: Vec<TermJson> =
                serde_json::from_value(emb.get(g).cloned().ok_or_else(|| bad(g))?).map_err(|e| bad(&e.to_string()))?;
            embedding.push(from_terms(s.m_table(), &terms)?);
        }
        Ok((Presentation::new(&s, relations, embedding)?, s))
    }
}

/// One named verification outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug)]
pub struct PresentationReport {
    pub checks: Vec<CheckOutcome>,
    pub kernel: Vec<ModuleVector>,
    pub change_of_basis_det: Option<RatFn>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Checks that (i) every relation embeds to zero in `M`, (ii) every embedded
/// generator is killed by `delta`, and (iii) `1` and the embedded `t_i` span
/// the same `Frac(S)`-subspace as the computed kernel of `delta`.
pub fn verify_presentation(
    p: &Presentation,
    s: &BaseRingS,
    delta: &Derivation,
) -> Result<PresentationReport, QuotientError> {
    let mut checks = Vec::new();
    for r in &p.relations {
        let v = s.to_module_vector(&p.embed(&r.poly, s)?)?;
        let detail = if v.is_zero() { String::new() } else { format!("image {v}") };
        checks.push(CheckOutcome::new(format!("relation {} vanishes in M", r.name), v.is_zero(), detail));
    }
    for (g, img) in p.generators.iter().zip(&p.embedding) {
        let d = s.to_module_vector(&delta.apply(img)?)?;
        checks.push(CheckOutcome::new(format!("generator {g} killed by derivation"), d.is_zero(), d.to_string()));
    }
    let mat = derivation_matrix(delta, s)?;
    let kernel = kernel_basis(&mat)?;
    let mut gens = vec![s.to_module_vector(&GeomPoly::one(s.m_table()))?];
    for img in &p.embedding[3..] {
        gens.push(s.to_module_vector(img)?);
    }
    let det = change_of_basis_det(&gens, &kernel)?;
    checks.push(CheckOutcome::new("kernel rank is 4", kernel.len() == 4, format!("rank {}", kernel.len())));
    checks.push(CheckOutcome::new(
        "generators and kernel span the same subspace",
        det.is_some(),
        det.as_ref().map(ToString::to_string).unwrap_or_else(|| "spans differ".into()),
    ));
    Ok(PresentationReport { checks, kernel, change_of_basis_det: det })
}

/// An element of `R` as coordinates over `S` in the basis `1, t_a, t_b, t_c`.
#[derive(Clone, Debug, PartialEq)]
pub struct RNormal {
    pub coords: [GeomPoly; 4],
}

impl RNormal {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(GeomPoly::is_zero)
    }

    /// Exact coordinatewise quotient by an element of `S`.
    pub fn divide_by(&self, h: &GeomPoly) -> Result<RNormal, AlgebraError> {
        let mut out = self.coords.clone();
        for c in out.iter_mut() {
            *c = c.exact_div(h)?;
        }
        Ok(RNormal { coords: out })
    }

    /// Representative in `K[u, t]` with `u_c` eliminated.
    pub fn to_poly(&self, p: &Presentation) -> Result<GeomPoly, AlgebraError> {
        let rt = p.r_table();
        let mut out = self.coords[0].rename_into(rt)?;
        for k in 0..3 {
            out = &out + &(&self.coords[k + 1].rename_into(rt)? * &GeomPoly::var(rt, 3 + k));
        }
        Ok(out)
    }
}

fn t_degree(m: &Monomial) -> u32 {
    m.exponents()[3..].iter().sum()
}

/// Rewriting rules `t_i t_j -> -(rest)` read off the relations with a
/// quadratic leading part in `t`.
fn rules(p: &Presentation) -> Result<Vec<(Monomial, GeomPoly)>, QuotientError> {
    let rt = p.r_table();
    let mut out: Vec<(Monomial, GeomPoly)> = Vec::new();
    for r in &p.relations {
        let quad: Vec<(&Monomial, _)> = r.poly.terms().filter(|(m, _)| t_degree(m) >= 2).collect();
        if quad.is_empty() {
            continue;
        }
        let [(m, c)] = quad.as_slice() else {
            return Err(QuotientError::Check(format!("relation {} has several quadratic t-terms", r.name)));
        };
        if t_degree(m) != 2 || m.exponents()[..3].iter().any(|&e| e > 0) {
            return Err(QuotientError::Check(format!("relation {} is not a rewriting rule", r.name)));
        }
        let inv = c.inverse().ok_or(AlgebraError::DivisionByZero)?;
        let lead = GeomPoly::monomial(rt, (*m).clone(), (*c).clone());
        let rest = (&r.poly - &lead).scale(&inv.negated());
        out.push(((*m).clone(), rest));
    }
    Ok(out)
}

/// Rewrites `t_i t_j` through the relations until every term has degree at
/// most one in `t`. The `t`-degree of a rewritten term strictly drops, so the
/// loop terminates.
pub fn reduce_t(f: &GeomPoly, p: &Presentation) -> Result<GeomPoly, QuotientError> {
    let rt = p.r_table();
    let rules = rules(p)?;
    let mut f = f.rename_into(rt)?;
    loop {
        let Some((m, c)) = f.terms().rev().find(|(m, _)| t_degree(m) >= 2).map(|(m, c)| (m.clone(), c.clone())) else {
            return Ok(f);
        };
        let (lead, rest) = rules
            .iter()
            .find(|(lead, _)| lead.divides(&m))
            .ok_or_else(|| QuotientError::Check(format!("no rule reduces {m:?}")))?;
        let cof = lead.quotient_of(&m).expect("divides");
        let lead_poly = GeomPoly::monomial(rt, lead.clone(), crate::algebra::ParamRational::one(rt));
        let delta = (rest - &lead_poly).mul_term(&cof, &c)?;
        f = &f + &delta;
    }
}

/// Coordinates over `S` of a polynomial of degree at most one in `t`.
pub fn linear_coords(f: &GeomPoly, s: &BaseRingS) -> Result<RNormal, QuotientError> {
    let t = f.table();
    let nt = t.len(Layer::Geometric);
    if nt != 6 {
        return Err(QuotientError::Check("expected a polynomial in u and t".into()));
    }
    let mut parts: Vec<GeomPoly> = vec![GeomPoly::zero(t); 4];
    for (m, c) in f.terms() {
        let e = m.exponents();
        let slot = match (e[3], e[4], e[5]) {
            (0, 0, 0) => 0,
            (1, 0, 0) => 1,
            (0, 1, 0) => 2,
            (0, 0, 1) => 3,
            _ => return Err(QuotientError::Check("t-degree above one".into())),
        };
        parts[slot].add_term(Monomial::from_exponents(&[e[0], e[1], e[2], 0, 0, 0]), c.clone());
    }
    let coords: Vec<GeomPoly> = parts.iter().map(|g| s.eliminate(g)).collect::<Result<_, _>>()?;
    Ok(RNormal { coords: coords.try_into().expect("four coordinates") })
}

/// Normal form of `f` in `R` over the basis `1, t_a, t_b, t_c`.
pub fn normal_form_r(f: &GeomPoly, p: &Presentation, s: &BaseRingS) -> Result<RNormal, QuotientError> {
    linear_coords(&reduce_t(f, p)?, s)
}

/// A `k x k` minor of the Jacobian with its row and column indices.
#[derive(Clone, Debug)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: GeomPoly,
    pub normal: RNormal,
}

/// Jacobian matrix `d r_i / d v_j`.
pub fn jacobian(relations: &[GeomPoly], vars: &[usize]) -> Result<Matrix<GeomPoly>, AlgebraError> {
    let rows = relations.iter().map(|r| vars.iter().map(|&v| r.partial(v)).collect()).collect();
    Matrix::from_rows(rows)
}

/// All `k x k` minors of the Jacobian, each reduced to its normal form in `R`.
pub fn jacobian_minors(
    relations: &[GeomPoly],
    vars: &[usize],
    k: usize,
    p: &Presentation,
    s: &BaseRingS,
) -> Result<Vec<Minor>, QuotientError> {
    let jac = jacobian(relations, vars)?;
    let mut out = Vec::new();
    for rows in combinations(jac.rows(), k) {
        for cols in combinations(jac.cols(), k) {
            let value = jac.submatrix(&rows, &cols).det_laplace()?;
            let normal = normal_form_r(&value, p, s)?;
            out.push(Minor { rows: rows.clone(), cols, value, normal });
        }
    }
    Ok(out)
}
