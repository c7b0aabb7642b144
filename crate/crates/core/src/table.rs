//! Thin wrapper over a CSV file with `name[unit]` headers.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{CoreError, Result};
use crate::units;

pub struct Table {
    pub file: String,
    names: Vec<String>,
    units: Vec<String>,
    index: HashMap<String, usize>,
    rows: Vec<Vec<String>>,
}

/// One row of a [`Table`], with accessors that convert units and report
/// schema errors by file, row and field.
pub struct Row<'a> {
    table: &'a Table,
    /// 1-based data row number (the header is row 0).
    pub number: usize,
    cells: &'a [String],
}

impl Table {
    pub fn read(path: &Path) -> Result<Self> {
        let file = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
        let text = std::fs::read(path).map_err(|source| CoreError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&file, &text).map_err(|e| match e {
            CoreError::Csv { source, .. } => CoreError::Csv {
                path: path.to_path_buf(),
                source,
            },
            e => e,
        })
    }

    /// Parses CSV text; `file` is only used in error messages.
    pub fn parse(file: &str, text: &[u8]) -> Result<Self> {
        let csv_err = |source| CoreError::Csv {
            path: file.into(),
            source,
        };
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text);
        let headers = reader.headers().map_err(csv_err)?.clone();
        let mut rows = Vec::new();
        for rec in reader.records() {
            let rec = rec.map_err(csv_err)?;
            rows.push(rec.iter().map(str::to_string).collect());
        }
        Ok(Self::from_parts(file.to_string(), headers.iter(), rows))
    }

    pub fn from_parts<'h>(file: String, headers: impl Iterator<Item = &'h str>, rows: Vec<Vec<String>>) -> Self {
        let mut names = Vec::new();
        let mut units_ = Vec::new();
        for h in headers {
            let (n, u) = units::split_header(h);
            names.push(n.to_string());
            units_.push(u.to_string());
        }
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        Table {
            file,
            names,
            units: units_,
            index,
            rows,
        }
    }

    pub fn has(&self, field: &str) -> bool {
        self.index.contains_key(field)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit_of(&self, field: &str) -> Option<&str> {
        self.index.get(field).map(|&i| self.units[i].as_str())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = Row<'_>> {
        self.rows.iter().enumerate().map(move |(i, cells)| Row {
            table: self,
            number: i + 1,
            cells,
        })
    }

    pub fn require(&self, fields: &[&str]) -> Result<()> {
        for f in fields {
            if !self.has(f) {
                return Err(CoreError::Schema {
                    file: self.file.clone(),
                    row: 0,
                    field: f.to_string(),
                    message: "missing column".into(),
                });
            }
        }
        Ok(())
    }

    /// Converts a whole numeric column to `canonical` units.
    pub fn column(&self, field: &str, canonical: &str) -> Result<Vec<f64>> {
        self.rows().map(|r| r.f64(field, canonical)).collect()
    }
}

impl<'a> Row<'a> {
    pub fn error(&self, field: &str, message: impl Into<String>) -> CoreError {
        CoreError::Schema {
            file: self.table.file.clone(),
            row: self.number,
            field: field.to_string(),
            message: message.into(),
        }
    }

    fn cell(&self, field: &str) -> Option<&'a str> {
        self.table
            .index
            .get(field)
            .and_then(|&i| self.cells.get(i))
            .map(|s| s.as_str())
            .filter(|s| !s.is_empty())
    }

    pub fn str(&self, field: &str) -> Result<&'a str> {
        self.cell(field).ok_or_else(|| self.error(field, "missing value"))
    }

    pub fn opt_str(&self, field: &str) -> Option<&'a str> {
        self.cell(field)
    }

    /// Identifier: nonempty, ASCII alphanumerics and `_` only, so that it can
    /// be embedded in variable names.
    pub fn id(&self, field: &str) -> Result<String> {
        let s = self.str(field)?;
        check_id(s).map_err(|m| self.error(field, m))?;
        Ok(s.to_string())
    }

    /// `;`-separated list of identifiers; empty cell gives an empty list.
    pub fn id_list(&self, field: &str) -> Result<Vec<String>> {
        let Some(s) = self.cell(field) else {
            return Ok(Vec::new());
        };
        s.split(';')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| check_id(t).map(|_| t.to_string()).map_err(|m| self.error(field, m)))
            .collect()
    }

    pub fn bool(&self, field: &str) -> Result<bool> {
        match self.str(field)?.to_ascii_lowercase().as_str() {
            "1" | "true" | "yes" | "y" => Ok(true),
            "0" | "false" | "no" | "n" => Ok(false),
            other => Err(self.error(field, format!("expected a boolean, got `{other}`"))),
        }
    }

    pub fn opt_bool(&self, field: &str, default: bool) -> Result<bool> {
        if self.cell(field).is_none() {
            return Ok(default);
        }
        self.bool(field)
    }

    /// Numeric cell converted from the column's declared unit to `canonical`.
    pub fn f64(&self, field: &str, canonical: &str) -> Result<f64> {
        self.opt_f64(field, canonical)?.ok_or_else(|| self.error(field, "missing value"))
    }

    pub fn opt_f64(&self, field: &str, canonical: &str) -> Result<Option<f64>> {
        let Some(s) = self.cell(field) else {
            return Ok(None);
        };
        let v: f64 = s.parse().map_err(|_| self.error(field, format!("not a number: `{s}`")))?;
        if !v.is_finite() {
            return Err(self.error(field, "value must be finite"));
        }
        let unit = self.table.unit_of(field).unwrap_or("");
        units::convert(v, unit, canonical)
            .map(Some)
            .map_err(|e| self.error(field, e.to_string()))
    }

    /// Raw number, unit ignored (for plain counts and indices).
    pub fn number(&self, field: &str) -> Result<f64> {
        let s = self.str(field)?;
        s.parse().map_err(|_| self.error(field, format!("not a number: `{s}`")))
    }
}

pub fn check_id(s: &str) -> std::result::Result<(), String> {
    if s.is_empty() || !s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(format!("invalid id `{s}`: use letters, digits and `_` only"));
    }
    Ok(())
}

impl Row<'_> {
    /// Numeric cell whose unit may be any of several forms, each with its own
    /// multiplier into the canonical quantity. For example a plant CAPEX may be
    /// given as `$/plant` (factor 1) or `$/kW` (factor nameplate, with
    /// canonical `$/MW`). The first form whose dimensions match wins.
    pub fn opt_f64_per(&self, field: &str, forms: &[(&str, f64)]) -> Result<Option<f64>> {
        let unit = self.table.unit_of(field).unwrap_or("");
        let declared = units::Unit::parse(unit).map_err(|e| self.error(field, e.to_string()))?;
        for &(canonical, factor) in forms {
            let c = units::Unit::parse(canonical)?;
            if declared.same_dims(&c) {
                return Ok(self.opt_f64(field, canonical)?.map(|v| v * factor));
            }
        }
        match self.cell(field) {
            None => Ok(None),
            Some(_) => Err(self.error(
                field,
                format!(
                    "unit `{unit}` not accepted; expected one of {}",
                    forms.iter().map(|f| f.0).collect::<Vec<_>>().join(", ")
                ),
            )),
        }
    }
}

/// Reads a wide table: one index column followed by one numeric column per
/// series, each converted to `canonical`. Columns keep their file order.
pub fn read_wide(path: &Path, index: &str, canonical: &str) -> Result<Vec<(String, Vec<f64>)>> {
    let t = Table::read(path)?;
    t.require(&[index])?;
    let mut out = Vec::new();
    for name in t.names() {
        if name == index {
            continue;
        }
        out.push((name.clone(), t.column(name, canonical)?));
    }
    Ok(out)
}

/// Writes a wide table with a 0-based integer index. Values use Rust's
/// shortest round-trip formatting so output is byte-stable.
pub fn write_wide(path: &Path, index: &str, unit: &str, columns: &[(String, Vec<f64>)]) -> Result<()> {
    let io = |source| CoreError::Io {
        path: path.to_path_buf(),
        source,
    };
    let n = columns.iter().map(|c| c.1.len()).max().unwrap_or(0);
    let mut s = String::from(index);
    for (name, _) in columns {
        s.push(',');
        s.push_str(name);
        if !unit.is_empty() {
            s.push('[');
            s.push_str(unit);
            s.push(']');
        }
    }
    s.push('\n');
    for i in 0..n {
        s.push_str(&i.to_string());
        for (_, v) in columns {
            s.push(',');
            if let Some(x) = v.get(i) {
                s.push_str(&x.to_string());
            }
        }
        s.push('\n');
    }
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(io)?;
    }
    std::fs::write(path, s).map_err(io)
}
