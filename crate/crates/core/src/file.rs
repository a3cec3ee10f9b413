//! The line-oriented algebra file format.
//!
//! ```text
//! dim 4
//! basis X Y Z T
//! bracket X Y -> 1 Z
//! J X -> 1 Y
//! J Z -> -1 T
//! metric diag 1 1 1 1
//! theta 0 0 0 1
//! ```
//!
//! Unlisted brackets are zero. `J` lines give `I(e)`; columns that follow
//! from `I² = −1` may be omitted. `metric rows` is followed by `dim` rows.
//! `#` starts a comment.

use std::fmt::Write as _;

use crate::catalog::CatalogEntry;
use crate::error::Error;
use crate::exterior::ExtForm;
use crate::lck::HermitianMetric;
use crate::lie::{ComplexStructure, LieAlgebra, MAX_DIM};
use crate::linalg::Matrix;
use crate::scalar::{GaussianRational, Rational};

type Scalar = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FileError {
    #[error("line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
}

/// Parsed file contents before any algebraic validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub names: Vec<String>,
    /// `constants[(i*n + j)*n + k]` as listed; antisymmetric completion applied.
    pub constants: Vec<Rational>,
    pub j: Option<Matrix>,
    pub metric: Option<Matrix>,
    pub theta: Option<Vec<Rational>>,
}

struct Token<'a> {
    col: usize,
    text: &'a str,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    col: line[..s].chars().count() + 1,
                    text: &line[s..i],
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            col: line[..s].chars().count() + 1,
            text: &line[s..],
        });
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

struct Parser {
    line: usize,
}

impl Parser {
    fn syntax(&self, col: usize, message: impl Into<String>) -> FileError {
        FileError::Syntax {
            line: self.line,
            col,
            message: message.into(),
        }
    }

    fn semantic(&self, message: impl Into<String>) -> FileError {
        FileError::Semantic {
            line: self.line,
            message: message.into(),
        }
    }

    fn rational(&self, t: &Token<'_>) -> Result<Rational, FileError> {
        t.text.parse().map_err(|_| {
            self.syntax(
                t.col,
                format!("expected a rational number, found `{}`", t.text),
            )
        })
    }

    fn name(&self, names: &[String], t: &Token<'_>) -> Result<usize, FileError> {
        names
            .iter()
            .position(|n| n == t.text)
            .ok_or_else(|| self.semantic(format!("unknown basis name `{}`", t.text)))
    }

    /// `c1 e1 c2 e2 …` as a coordinate vector.
    fn combo(
        &self,
        names: &[String],
        ts: &[Token<'_>],
        end_col: usize,
    ) -> Result<Vec<Rational>, FileError> {
        if ts.is_empty() {
            return Err(self.syntax(end_col, "expected a linear combination"));
        }
        if ts.len() % 2 == 1 {
            return Err(self.syntax(ts[ts.len() - 1].col, "coefficient without a basis name"));
        }
        let mut v = vec![Rational::ZERO; names.len()];
        for pair in ts.chunks(2) {
            let c = self.rational(&pair[0])?;
            let k = self.name(names, &pair[1])?;
            v[k] += &c;
        }
        Ok(v)
    }

    fn rationals(
        &self,
        ts: &[Token<'_>],
        n: usize,
        end_col: usize,
    ) -> Result<Vec<Rational>, FileError> {
        if ts.len() != n {
            let col = ts.get(n).map_or(end_col, |t| t.col);
            return Err(self.syntax(col, format!("expected {n} numbers, found {}", ts.len())));
        }
        ts.iter().map(|t| self.rational(t)).collect()
    }
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<AlgebraFile, FileError> {
        let lines: Vec<&str> = text.lines().collect();
        let mut p = Parser { line: 0 };
        let mut dim: Option<usize> = None;
        let mut names: Option<Vec<String>> = None;
        let mut listed: Vec<Option<Rational>> = Vec::new();
        let mut j_cols: Vec<Option<Vec<Rational>>> = Vec::new();
        let mut j_line = 0;
        let mut metric: Option<Matrix> = None;
        let mut theta = None;
        let mut idx = 0;
        while idx < lines.len() {
            p.line = idx + 1;
            let raw = strip_comment(lines[idx]);
            idx += 1;
            let ts = tokens(raw);
            let Some(head) = ts.first() else { continue };
            let end_col = raw.chars().count() + 1;
            let rest = &ts[1..];
            let need_basis = |p: &Parser| -> Result<(), FileError> {
                if names.is_none() {
                    return Err(p.syntax(head.col, format!("`{}` before `basis`", head.text)));
                }
                Ok(())
            };
            match head.text {
                "dim" => {
                    if dim.is_some() {
                        return Err(p.semantic("duplicate `dim`"));
                    }
                    let [t] = rest else {
                        return Err(p.syntax(
                            rest.get(1).map_or(end_col, |t| t.col),
                            "expected `dim <count>`",
                        ));
                    };
                    let n: usize = t
                        .text
                        .parse()
                        .map_err(|_| p.syntax(t.col, "expected a dimension"))?;
                    if n == 0 || n > MAX_DIM {
                        return Err(
                            p.semantic(format!("dimension must be between 1 and {MAX_DIM}"))
                        );
                    }
                    dim = Some(n);
                }
                "basis" => {
                    let Some(n) = dim else {
                        return Err(p.syntax(head.col, "`basis` before `dim`"));
                    };
                    if names.is_some() {
                        return Err(p.semantic("duplicate `basis`"));
                    }
                    if rest.len() != n {
                        return Err(p.syntax(
                            rest.get(n).map_or(end_col, |t| t.col),
                            format!("expected {n} basis names"),
                        ));
                    }
                    let ns: Vec<String> = rest.iter().map(|t| t.text.to_string()).collect();
                    for (a, t) in rest.iter().enumerate() {
                        if ns[..a].contains(&ns[a]) {
                            return Err(p.semantic(format!("duplicate basis name `{}`", t.text)));
                        }
                        if t.text.parse::<Rational>().is_ok() || t.text.contains(['^', '(', ')']) {
                            return Err(p.syntax(t.col, format!("invalid basis name `{}`", t.text)));
                        }
                    }
                    listed = vec![None; n * n * n];
                    j_cols = vec![None; n];
                    names = Some(ns);
                }
                "bracket" => {
                    need_basis(&p)?;
                    let ns = names.as_ref().unwrap();
                    let n = ns.len();
                    if rest.len() < 3 || rest[2].text != "->" {
                        return Err(p.syntax(
                            rest.get(2).map_or(end_col, |t| t.col),
                            "expected `bracket a b -> combo`",
                        ));
                    }
                    let (a, b) = (p.name(ns, &rest[0])?, p.name(ns, &rest[1])?);
                    let v = p.combo(ns, &rest[3..], end_col)?;
                    if a == b {
                        if v.iter().any(|x| !x.is_zero()) {
                            return Err(p.semantic("a bracket [a, a] must be zero"));
                        }
                        continue;
                    }
                    for (k, x) in v.into_iter().enumerate() {
                        let neg = -&x;
                        for (slot, val) in [((a * n + b) * n + k, x), ((b * n + a) * n + k, neg)] {
                            match &listed[slot] {
                                Some(old) if *old != val => {
                                    return Err(p.semantic(format!(
                                        "bracket [{}, {}] conflicts with an earlier line",
                                        ns[a], ns[b]
                                    )))
                                }
                                _ => listed[slot] = Some(val),
                            }
                        }
                    }
                }
                "J" => {
                    need_basis(&p)?;
                    let ns = names.as_ref().unwrap();
                    if rest.len() < 2 || rest[1].text != "->" {
                        return Err(p.syntax(
                            rest.get(1).map_or(end_col, |t| t.col),
                            "expected `J e -> combo`",
                        ));
                    }
                    let e = p.name(ns, &rest[0])?;
                    let v = p.combo(ns, &rest[2..], end_col)?;
                    if j_cols[e].is_some() {
                        return Err(p.semantic(format!("duplicate `J {}`", ns[e])));
                    }
                    j_cols[e] = Some(v);
                    j_line = p.line;
                }
                "metric" => {
                    need_basis(&p)?;
                    let n = names.as_ref().unwrap().len();
                    if metric.is_some() {
                        return Err(p.semantic("duplicate `metric`"));
                    }
                    match rest.first().map(|t| t.text) {
                        Some("diag") => {
                            let d = p.rationals(&rest[1..], n, end_col)?;
                            metric = Some(Matrix::diag(
                                &d.into_iter().map(Scalar::real).collect::<Vec<_>>(),
                            ));
                        }
                        Some("rows") if rest.len() == 1 => {
                            let mut rows = Vec::new();
                            while rows.len() < n {
                                if idx >= lines.len() {
                                    p.line = lines.len();
                                    return Err(p.syntax(1, format!("expected {n} metric rows")));
                                }
                                p.line = idx + 1;
                                let raw = strip_comment(lines[idx]);
                                idx += 1;
                                let ts = tokens(raw);
                                if ts.is_empty() {
                                    continue;
                                }
                                let row = p.rationals(&ts, n, raw.chars().count() + 1)?;
                                rows.push(row.into_iter().map(Scalar::real).collect());
                            }
                            metric = Some(Matrix::from_rows(n, rows));
                        }
                        _ => {
                            let col = rest.first().map_or(end_col, |t| t.col);
                            return Err(p.syntax(col, "expected `metric diag …` or `metric rows`"));
                        }
                    }
                }
                "theta" => {
                    need_basis(&p)?;
                    if theta.is_some() {
                        return Err(p.semantic("duplicate `theta`"));
                    }
                    theta = Some(p.rationals(rest, names.as_ref().unwrap().len(), end_col)?);
                }
                other => return Err(p.syntax(head.col, format!("unknown keyword `{other}`"))),
            }
        }
        p.line = lines.len().max(1);
        let Some(names) = names else {
            return Err(if dim.is_none() {
                p.syntax(1, "empty file: expected `dim`")
            } else {
                p.syntax(1, "missing `basis`")
            });
        };
        let constants = listed.into_iter().map(Option::unwrap_or_default).collect();
        let j = if j_cols.iter().any(Option::is_some) {
            p.line = j_line;
            Some(complete_j(&j_cols).map_err(|m| p.semantic(m))?)
        } else {
            None
        };
        Ok(AlgebraFile {
            names,
            constants,
            j,
            metric,
            theta,
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn algebra(&self) -> Result<LieAlgebra, Error> {
        LieAlgebra::new(self.names.clone(), self.constants.clone())
    }

    pub fn complex_structure(&self) -> Result<Option<ComplexStructure>, Error> {
        self.j.clone().map(ComplexStructure::new).transpose()
    }

    pub fn hermitian_metric(&self) -> Result<Option<HermitianMetric>, Error> {
        self.metric.clone().map(HermitianMetric::new).transpose()
    }

    pub fn theta_form(&self) -> Option<ExtForm> {
        self.theta.as_ref().map(|t| ExtForm::real_covector(t))
    }

    /// Validates every section into a catalog entry named `name`.
    pub fn to_entry(&self, name: &str) -> Result<CatalogEntry, Error> {
        Ok(CatalogEntry {
            name: name.into(),
            algebra: self.algebra()?,
            complex_structure: self.complex_structure()?,
            metric: self.hermitian_metric()?,
            theta: self.theta_form(),
            notes: String::new(),
        })
    }

    pub fn from_entry(entry: &CatalogEntry) -> AlgebraFile {
        let g = &entry.algebra;
        AlgebraFile {
            names: g.names().to_vec(),
            constants: g.constants().to_vec(),
            j: entry.complex_structure.as_ref().map(|j| j.matrix().clone()),
            metric: entry.metric.as_ref().map(|h| h.gram().clone()),
            theta: entry
                .theta
                .as_ref()
                .map(|t| t.to_dense().into_iter().map(|x| x.re).collect()),
        }
    }

    /// Canonical text: brackets `[a, b]` with `a < b` in order, every J
    /// column, `metric diag` when the Gram matrix is diagonal.
    pub fn to_text(&self) -> String {
        let n = self.dim();
        let mut s = String::new();
        writeln!(s, "dim {n}").unwrap();
        writeln!(s, "basis {}", self.names.join(" ")).unwrap();
        let combo = |v: &mut dyn Iterator<Item = (usize, Rational)>| -> String {
            v.filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{c} {}", self.names[k]))
                .collect::<Vec<_>>()
                .join(" ")
        };
        for a in 0..n {
            for b in a + 1..n {
                let terms =
                    combo(&mut (0..n).map(|k| (k, self.constants[(a * n + b) * n + k].clone())));
                if !terms.is_empty() {
                    writeln!(s, "bracket {} {} -> {terms}", self.names[a], self.names[b]).unwrap();
                }
            }
        }
        if let Some(j) = &self.j {
            for e in 0..n {
                let terms = combo(&mut (0..n).map(|k| (k, j[(k, e)].re.clone())));
                writeln!(s, "J {} -> {terms}", self.names[e]).unwrap();
            }
        }
        if let Some(m) = &self.metric {
            let diagonal = (0..n).all(|a| (0..n).all(|b| a == b || m[(a, b)].is_zero()));
            if diagonal {
                let d: Vec<String> = (0..n).map(|a| m[(a, a)].re.to_string()).collect();
                writeln!(s, "metric diag {}", d.join(" ")).unwrap();
            } else {
                writeln!(s, "metric rows").unwrap();
                for a in 0..n {
                    let r: Vec<String> = (0..n).map(|b| m[(a, b)].re.to_string()).collect();
                    writeln!(s, "{}", r.join(" ")).unwrap();
                }
            }
        }
        if let Some(t) = &self.theta {
            let v: Vec<String> = t.iter().map(Rational::to_string).collect();
            writeln!(s, "theta {}", v.join(" ")).unwrap();
        }
        s
    }
}

/// Fills in J from the listed columns using `I(Ie) = −e`.
fn complete_j(cols: &[Option<Vec<Rational>>]) -> Result<Matrix, String> {
    let n = cols.len();
    let unit = |k: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::ZERO; n];
        v[k] = Scalar::ONE;
        v
    };
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    for (e, c) in cols.iter().enumerate() {
        if let Some(c) = c {
            let v: Vec<Scalar> = c.iter().cloned().map(Scalar::real).collect();
            inputs.push(unit(e));
            outputs.push(v.clone());
            inputs.push(v);
            outputs.push(unit(e).into_iter().map(|x| -x).collect());
        }
    }
    let a = Matrix::from_cols(n, &inputs);
    let b = Matrix::from_cols(n, &outputs);
    if a.rank() < n {
        return Err("J is not determined by the listed columns".into());
    }
    // J A = B, solved as Aᵀ Jᵀ = Bᵀ column by column
    let at = a.transpose();
    let bt = b.transpose();
    let mut jt_cols = Vec::with_capacity(n);
    for r in 0..n {
        let col = at
            .solve(&bt.col(r))
            .ok_or("listed J columns are inconsistent with I² = −1")?;
        jt_cols.push(col);
    }
    Ok(Matrix::from_cols(n, &jt_cols).transpose())
}

pub fn export_entry(entry: &CatalogEntry) -> String {
    AlgebraFile::from_entry(entry).to_text()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const HEISENBERG: &str = "dim 4
basis X Y Z T
bracket X Y -> 1 Z
J X -> 1 Y
J Z -> -1 T
metric diag 1 1 1 1
theta 0 0 0 1
";

    #[test]
    fn heisenberg_file_matches_catalog() {
        let f = AlgebraFile::parse(HEISENBERG).unwrap();
        let e = f.to_entry("heisenberg").unwrap();
        let c = catalog::heisenberg_x_line(1).unwrap();
        assert_eq!(e.algebra, c.algebra);
        assert_eq!(e.complex_structure, c.complex_structure);
        assert_eq!(e.metric, c.metric);
        assert_eq!(e.theta, c.theta);
    }

    #[test]
    fn round_trip_on_catalog_exports() {
        let mut entries = vec![catalog::iwasawa(), catalog::abelian(6).unwrap()];
        entries.extend((1..=4).map(|n| catalog::heisenberg_x_line(n).unwrap()));
        entries.extend(catalog::random_nilpotent_with_j(3, 3, 8));
        for e in &entries {
            let text = export_entry(e);
            let parsed = AlgebraFile::parse(&text).unwrap();
            assert_eq!(parsed.to_text(), text);
            assert_eq!(parsed, AlgebraFile::from_entry(e));
            let back = parsed.to_entry(&e.name).unwrap();
            assert_eq!(back.algebra, e.algebra);
            assert_eq!(back.complex_structure, e.complex_structure);
        }
    }

    #[test]
    fn metric_rows_and_comments() {
        let text = "# a comment\ndim 2\nbasis a b\nmetric rows\n2 1 # trailing\n\n1 2\n";
        let f = AlgebraFile::parse(text).unwrap();
        assert_eq!(f.metric.unwrap(), Matrix::from_ints(&[&[2, 1], &[1, 2]]));
    }

    #[test]
    fn diagnostics() {
        assert!(matches!(
            AlgebraFile::parse(""),
            Err(FileError::Syntax {
                line: 1,
                col: 1,
                ..
            })
        ));
        let unknown = "dim 4\nbasis X Y Z T\nbracket X Y -> 1 Q\n";
        assert!(matches!(
            AlgebraFile::parse(unknown),
            Err(FileError::Semantic { line: 3, .. })
        ));
        let conflict = "dim 3\nbasis a b c\nbracket a b -> 1 c\nbracket b a -> 1 c\n";
        assert!(matches!(
            AlgebraFile::parse(conflict),
            Err(FileError::Semantic { line: 4, .. })
        ));
        let agree = "dim 3\nbasis a b c\nbracket a b -> 1 c\nbracket b a -> -1 c\n";
        assert!(AlgebraFile::parse(agree).is_ok());
        let bad_num = "dim 2\nbasis a b\ntheta 1 x\n";
        assert!(matches!(
            AlgebraFile::parse(bad_num),
            Err(FileError::Syntax {
                line: 3,
                col: 9,
                ..
            })
        ));
        let partial_j = "dim 4\nbasis a b c d\nJ a -> 1 b\n";
        assert!(matches!(
            AlgebraFile::parse(partial_j),
            Err(FileError::Semantic { line: 3, .. })
        ));
        let keyword = "dim 2\nfoo\n";
        assert!(matches!(
            AlgebraFile::parse(keyword),
            Err(FileError::Syntax {
                line: 2,
                col: 1,
                ..
            })
        ));
    }

    #[test]
    fn jacobi_failure_is_not_a_parse_error() {
        let text =
            "dim 3\nbasis a b c\nbracket a b -> 1 a\nbracket b c -> 1 b\nbracket a c -> 1 c\n";
        let f = AlgebraFile::parse(text).unwrap();
        assert!(matches!(f.algebra(), Err(Error::JacobiViolation(..))));
    }
}
