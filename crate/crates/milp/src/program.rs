use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::{MilpError, Result};

/// Name of the fixed helper column the writers emit to carry the objective
/// constant, since neither LP nor MPS has a portable offset field.
pub const OBJECTIVE_CONSTANT_NAME: &str = "obj.constant";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VarId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConstrId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarKind {
    Continuous,
    Binary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
    pub kind: VarKind,
}

impl Variable {
    /// Leading segment of the mangled name (`block.i.j` -> `block`).
    pub fn block(&self) -> &str {
        block_of(&self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(VarId, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

impl Constraint {
    pub fn block(&self) -> &str {
        block_of(&self.name)
    }

    pub fn activity(&self, values: &[f64]) -> f64 {
        self.terms.iter().map(|&(v, a)| a * values[v.0]).sum()
    }
}

/// One tagged piece of the objective. Terms on the same variable are summed
/// when the program is written, but the per-category split is kept for cost
/// reporting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveTerm {
    pub var: VarId,
    pub coef: f64,
    pub category: String,
}

fn block_of(name: &str) -> &str {
    name.split('.').next().unwrap_or(name)
}

fn check_name(name: &str) -> Result<()> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == ':') {
        return Err(MilpError::InvalidName(name.to_string()));
    }
    Ok(())
}

/// Minimisation MILP with named columns and rows, kept in insertion order.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Program {
    pub name: String,
    vars: Vec<Variable>,
    constraints: Vec<Constraint>,
    objective: Vec<ObjectiveTerm>,
    constants: Vec<(String, f64)>,
    /// Free-form metadata (e.g. block name -> model symbols it uses).
    pub metadata: BTreeMap<String, String>,
    #[serde(skip)]
    var_index: HashMap<String, VarId>,
    #[serde(skip)]
    constr_index: HashMap<String, ConstrId>,
}

impl Program {
    pub fn new(name: impl Into<String>) -> Self {
        Program {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn add_var(&mut self, name: impl Into<String>, lower: f64, upper: f64, kind: VarKind) -> Result<VarId> {
        let name = name.into();
        check_name(&name)?;
        if name == OBJECTIVE_CONSTANT_NAME {
            return Err(MilpError::InvalidName(name));
        }
        let (lower, upper) = match kind {
            VarKind::Binary => (lower.max(0.0), upper.min(1.0)),
            VarKind::Continuous => (lower, upper),
        };
        if lower.is_nan() || upper.is_nan() || lower > upper || lower == f64::INFINITY || upper == f64::NEG_INFINITY {
            return Err(MilpError::InvalidBounds { name, lower, upper });
        }
        if self.var_index.contains_key(&name) {
            return Err(MilpError::DuplicateVariable(name));
        }
        let id = VarId(self.vars.len());
        self.var_index.insert(name.clone(), id);
        self.vars.push(Variable { name, lower, upper, kind });
        Ok(id)
    }

    /// Continuous variable in `[0, +inf)`.
    pub fn nonneg(&mut self, name: impl Into<String>) -> Result<VarId> {
        self.add_var(name, 0.0, f64::INFINITY, VarKind::Continuous)
    }

    pub fn free(&mut self, name: impl Into<String>) -> Result<VarId> {
        self.add_var(name, f64::NEG_INFINITY, f64::INFINITY, VarKind::Continuous)
    }

    pub fn binary(&mut self, name: impl Into<String>) -> Result<VarId> {
        self.add_var(name, 0.0, 1.0, VarKind::Binary)
    }

    pub fn add_constr(
        &mut self,
        name: impl Into<String>,
        terms: impl IntoIterator<Item = (VarId, f64)>,
        sense: Sense,
        rhs: f64,
    ) -> Result<ConstrId> {
        let name = name.into();
        check_name(&name)?;
        if self.constr_index.contains_key(&name) {
            return Err(MilpError::DuplicateConstraint(name));
        }
        if !rhs.is_finite() {
            return Err(MilpError::NonFinite(name));
        }
        let mut merged: Vec<(VarId, f64)> = Vec::new();
        let mut slot: HashMap<VarId, usize> = HashMap::new();
        for (v, a) in terms {
            if v.0 >= self.vars.len() {
                return Err(MilpError::UnknownVariable(format!("#{}", v.0)));
            }
            if !a.is_finite() {
                return Err(MilpError::NonFinite(name));
            }
            match slot.get(&v) {
                Some(&i) => merged[i].1 += a,
                None => {
                    slot.insert(v, merged.len());
                    merged.push((v, a));
                }
            }
        }
        merged.retain(|&(_, a)| a != 0.0);
        let id = ConstrId(self.constraints.len());
        self.constr_index.insert(name.clone(), id);
        self.constraints.push(Constraint {
            name,
            terms: merged,
            sense,
            rhs,
        });
        Ok(id)
    }

    /// Same as [`Program::add_constr`] but with terms referenced by name.
    pub fn add_constr_by_name(
        &mut self,
        name: impl Into<String>,
        terms: &[(&str, f64)],
        sense: Sense,
        rhs: f64,
    ) -> Result<ConstrId> {
        let resolved = terms
            .iter()
            .map(|&(n, a)| self.var(n).map(|v| (v, a)).ok_or_else(|| MilpError::UnknownVariable(n.to_string())))
            .collect::<Result<Vec<_>>>()?;
        self.add_constr(name, resolved, sense, rhs)
    }

    pub fn add_objective(&mut self, var: VarId, coef: f64, category: &str) -> Result<()> {
        if var.0 >= self.vars.len() {
            return Err(MilpError::UnknownVariable(format!("#{}", var.0)));
        }
        if category.is_empty() {
            return Err(MilpError::UntaggedObjective(self.vars[var.0].name.clone()));
        }
        if !coef.is_finite() {
            return Err(MilpError::NonFinite(format!("objective:{}", self.vars[var.0].name)));
        }
        if coef != 0.0 {
            self.objective.push(ObjectiveTerm {
                var,
                coef,
                category: category.to_string(),
            });
        }
        Ok(())
    }

    pub fn add_objective_constant(&mut self, category: &str, value: f64) -> Result<()> {
        if category.is_empty() {
            return Err(MilpError::UntaggedObjective("<constant>".into()));
        }
        if !value.is_finite() {
            return Err(MilpError::NonFinite(format!("constant:{category}")));
        }
        if value != 0.0 {
            self.constants.push((category.to_string(), value));
        }
        Ok(())
    }

    pub fn var(&self, name: &str) -> Option<VarId> {
        self.var_index.get(name).copied()
    }

    pub fn constr(&self, name: &str) -> Option<ConstrId> {
        self.constr_index.get(name).copied()
    }

    pub fn variable(&self, id: VarId) -> &Variable {
        &self.vars[id.0]
    }

    pub fn constraint(&self, id: ConstrId) -> &Constraint {
        &self.constraints[id.0]
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective_terms(&self) -> &[ObjectiveTerm] {
        &self.objective
    }

    pub fn objective_constants(&self) -> &[(String, f64)] {
        &self.constants
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn num_binaries(&self) -> usize {
        self.vars.iter().filter(|v| v.kind == VarKind::Binary).count()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty() && self.constraints.is_empty()
    }

    /// Dense objective coefficients with all tagged terms summed per column.
    pub fn objective_coefficients(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.vars.len()];
        for t in &self.objective {
            c[t.var.0] += t.coef;
        }
        c
    }

    pub fn objective_constant(&self) -> f64 {
        self.constants.iter().map(|(_, v)| v).sum()
    }

    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.objective.iter().map(|t| t.coef * values[t.var.0]).sum::<f64>() + self.objective_constant()
    }

    pub fn set_bounds(&mut self, id: VarId, lower: f64, upper: f64) -> Result<()> {
        let v = &mut self.vars[id.0];
        if lower > upper || lower.is_nan() || upper.is_nan() {
            return Err(MilpError::InvalidBounds {
                name: v.name.clone(),
                lower,
                upper,
            });
        }
        v.lower = lower;
        v.upper = upper;
        Ok(())
    }

    pub fn set_kind(&mut self, id: VarId, kind: VarKind) {
        self.vars[id.0].kind = kind;
    }

    /// Turns every binary into a continuous column with the same bounds.
    pub fn relax_integrality(&mut self) {
        for v in &mut self.vars {
            v.kind = VarKind::Continuous;
        }
    }

    /// Rebuilds the name indices after deserialisation.
    pub fn reindex(&mut self) {
        self.var_index = self.vars.iter().enumerate().map(|(i, v)| (v.name.clone(), VarId(i))).collect();
        self.constr_index = self
            .constraints
            .iter()
            .enumerate()
            .map(|(i, c)| (c.name.clone(), ConstrId(i)))
            .collect();
    }
}
