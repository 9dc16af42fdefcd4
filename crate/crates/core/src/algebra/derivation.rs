use std::sync::Arc;

use super::error::AlgebraError;
use super::geom::GeomPoly;
use super::vars::{ensure_same, Layer, Var, VarTable};

/// A derivation of the chart ring, given by the images of the variables.
/// Unlisted variables are sent to zero.
#[derive(Clone, Debug)]
pub struct Derivation {
    table: Arc<VarTable>,
    geom: Vec<Option<GeomPoly>>,
    params: Vec<Option<GeomPoly>>,
}

impl Derivation {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        Derivation {
            table: table.clone(),
            geom: vec![None; table.len(Layer::Geometric)],
            params: vec![None; table.len(Layer::Parameter)],
        }
    }

    pub fn with_image(mut self, v: Var, image: GeomPoly) -> Result<Self, AlgebraError> {
        self.set(v, image)?;
        Ok(self)
    }

    pub fn set(&mut self, v: Var, image: GeomPoly) -> Result<(), AlgebraError> {
        ensure_same(&self.table, image.table())?;
        let slot = match v {
            Var::Geom(i) => self.geom.get_mut(i),
            Var::Param(i) => self.params.get_mut(i),
        }
        .ok_or_else(|| AlgebraError::UnknownVariable(format!("{v:?}")))?;
        *slot = (!image.is_zero()).then_some(image);
        Ok(())
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn image(&self, v: Var) -> GeomPoly {
        let img = match v {
            Var::Geom(i) => self.geom.get(i),
            Var::Param(i) => self.params.get(i),
        };
        img.cloned().flatten().unwrap_or_else(|| GeomPoly::zero(&self.table))
    }

    /// Whether every parameter is sent to zero (a derivation over the
    /// parameter field).
    pub fn is_parameter_linear(&self) -> bool {
        self.params.iter().all(Option::is_none)
    }

    /// `delta(f) = sum_v df/dv * delta(v)`.
    pub fn apply(&self, f: &GeomPoly) -> Result<GeomPoly, AlgebraError> {
        ensure_same(&self.table, f.table())?;
        let mut out = GeomPoly::zero(&self.table);
        for (i, img) in self.geom.iter().enumerate() {
            if let Some(img) = img {
                let d = f.partial(i);
                if !d.is_zero() {
                    out = out.checked_add(&d.checked_mul(img)?)?;
                }
            }
        }
        for (i, img) in self.params.iter().enumerate() {
            if let Some(img) = img {
                let d = f.param_partial(i)?;
                if !d.is_zero() {
                    out = out.checked_add(&d.checked_mul(img)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Variables with a nonzero image, geometric first.
    pub fn support(&self) -> Vec<Var> {
        let g = self.geom.iter().enumerate().filter(|(_, v)| v.is_some()).map(|(i, _)| Var::Geom(i));
        let p = self.params.iter().enumerate().filter(|(_, v)| v.is_some()).map(|(i, _)| Var::Param(i));
        g.chain(p).collect()
    }

    /// All variables of the table, geometric first.
    pub fn variables(&self) -> Vec<Var> {
        (0..self.geom.len()).map(Var::Geom).chain((0..self.params.len()).map(Var::Param)).collect()
    }

    /// Sum of two derivations.
    pub fn plus(&self, other: &Self) -> Result<Self, AlgebraError> {
        ensure_same(&self.table, &other.table)?;
        let mut out = self.clone();
        for v in other.support() {
            let sum = self.image(v).checked_add(&other.image(v))?;
            out.set(v, sum)?;
        }
        Ok(out)
    }

    /// `g * delta`.
    pub fn scaled(&self, g: &GeomPoly) -> Result<Self, AlgebraError> {
        let mut out = Derivation::zero(&self.table);
        for v in self.support() {
            out.set(v, self.image(v).checked_mul(g)?)?;
        }
        Ok(out)
    }
}
