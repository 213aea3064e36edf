//! Instance files and the built-in instances.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{HpError, HypError, PolyError};
use crate::hp::HPInstance;
use crate::hyperbolic::{normalize, HypVerdict};
use crate::poly::{parse_rat, symbolic_det, LinearForm, Monomial, Rat, SparsePoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub c: String,
    pub mono: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectiveSpec {
    pub lin: Vec<String>,
    #[serde(rename = "const", default = "zero_string")]
    pub constant: String,
}

fn zero_string() -> String {
    "0".into()
}

/// JSON description of `(f, e, section, objective)`; rationals are strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub vars: Vec<String>,
    pub f: Vec<TermSpec>,
    pub e: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Vec<String>>,
    pub objective: ObjectiveSpec,
    /// Direction of the derivative relaxations; defaults to `e`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relax: Option<Vec<String>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error("unknown instance {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Hyp(#[from] HypError),
    #[error(transparent)]
    Hp(#[from] HpError),
}

fn rat_string(x: &Rat) -> String {
    x.to_string()
}

fn parse_vec(v: &[String], n: usize, what: &str) -> Result<Vec<Rat>, InstanceError> {
    if v.len() != n {
        return Err(InstanceError::Malformed(format!("{what} has {} entries, expected {n}", v.len())));
    }
    v.iter().map(|s| parse_rat(s).map_err(Into::into)).collect()
}

impl InstanceFile {
    pub fn from_parts(vars: Vec<String>, f: &SparsePoly, e: &[Rat], section: Option<&[Rat]>, objective: &LinearForm) -> Self {
        InstanceFile {
            vars,
            f: f.terms()
                .rev()
                .map(|(m, c)| TermSpec {
                    c: rat_string(c),
                    mono: m.0.clone(),
                })
                .collect(),
            e: e.iter().map(rat_string).collect(),
            section: section.map(|s| s.iter().map(rat_string).collect()),
            objective: ObjectiveSpec {
                lin: objective.coeffs.iter().map(rat_string).collect(),
                constant: rat_string(&objective.constant),
            },
            relax: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        serde_json::from_str(text).map_err(|e| InstanceError::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn polynomial(&self) -> Result<SparsePoly, InstanceError> {
        let n = self.vars.len();
        let mut f = SparsePoly::zero(n);
        for t in &self.f {
            if t.mono.len() != n {
                return Err(InstanceError::Malformed(format!(
                    "exponent vector {:?} does not match {n} variables",
                    t.mono
                )));
            }
            f.add_term(Monomial(t.mono.clone()), parse_rat(&t.c)?);
        }
        Ok(f)
    }

    pub fn direction(&self) -> Result<Vec<Rat>, InstanceError> {
        parse_vec(&self.e, self.vars.len(), "e")
    }

    pub fn relax_direction(&self) -> Result<Vec<Rat>, InstanceError> {
        match &self.relax {
            Some(r) => parse_vec(r, self.vars.len(), "relax"),
            None => self.direction(),
        }
    }

    /// Section coefficients; defaults to `e`.
    pub fn section_form(&self) -> Result<LinearForm, InstanceError> {
        let n = self.vars.len();
        let c = match &self.section {
            Some(s) => parse_vec(s, n, "section")?,
            None => self.direction()?,
        };
        Ok(LinearForm::homogeneous(c))
    }

    pub fn objective_form(&self) -> Result<LinearForm, InstanceError> {
        let c = parse_vec(&self.objective.lin, self.vars.len(), "objective")?;
        Ok(LinearForm::new(c, parse_rat(&self.objective.constant)?))
    }

    /// Validates and normalizes into a solver instance (hyperbolicity is
    /// assumed; see [`crate::hyperbolic::hyperbolicity_test`]).
    pub fn to_instance(&self) -> Result<HPInstance, InstanceError> {
        let f = self.polynomial()?;
        let h = normalize(&f, &self.direction()?)?;
        let inst = HPInstance::new(h, self.objective_form()?, self.section_form()?, HypVerdict::assumed())?;
        Ok(match &self.relax {
            Some(_) => inst.with_relax_direction(self.relax_direction()?)?,
            None => inst,
        })
    }
}

/// Parses instance JSON into a validated instance.
pub fn parse_instance(text: &str) -> Result<HPInstance, InstanceError> {
    InstanceFile::from_json(text)?.to_instance()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Elliptope(usize),
    Pencil5x5,
    Ellipse3,
    Derivative(Box<Builtin>, usize),
}

impl Builtin {
    /// Accepts `elliptope3`, `elliptope(3)`, `pencil5x5`, `ellipse3` and
    /// `derivative(BASE,K)`.
    pub fn parse(name: &str) -> Result<Builtin, InstanceError> {
        let unknown = || InstanceError::UnknownName(name.to_string());
        let name = name.trim();
        if let Some(inner) = name.strip_prefix("derivative(").and_then(|s| s.strip_suffix(')')) {
            let (base, k) = inner.rsplit_once(',').ok_or_else(unknown)?;
            let k: usize = k.trim().parse().map_err(|_| unknown())?;
            return Ok(Builtin::Derivative(Box::new(Builtin::parse(base)?), k));
        }
        match name {
            "pencil5x5" => return Ok(Builtin::Pencil5x5),
            "ellipse3" => return Ok(Builtin::Ellipse3),
            _ => {}
        }
        let d = name
            .strip_prefix("elliptope")
            .map(|s| s.trim_start_matches('(').trim_end_matches(')'))
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(unknown)?;
        if !(2..=6).contains(&d) {
            return Err(unknown());
        }
        Ok(Builtin::Elliptope(d))
    }
}

/// Exact data of a built-in instance.
pub fn make_instance(b: &Builtin) -> Result<InstanceFile, InstanceError> {
    match b {
        Builtin::Elliptope(d) => Ok(elliptope(*d)),
        Builtin::Pencil5x5 => Ok(pencil5x5()),
        Builtin::Ellipse3 => Ok(ellipse3()),
        Builtin::Derivative(base, k) => {
            let mut file = make_instance(base)?;
            let f = file.polynomial()?;
            let d = f.degree().unwrap_or(0) as usize;
            if *k >= d {
                return Err(HpError::DerivativeOrder { k: *k, d }.into());
            }
            let dir = file.relax_direction()?;
            let g = f.directional_derivative(&dir, *k as u32)?;
            file.f = InstanceFile::from_parts(file.vars.clone(), &g, &[], None, &file.objective_form()?).f;
            if let Some(r) = file.relax.take() {
                // the relaxation cone is taken with respect to its own direction
                if file.section.is_none() {
                    file.section = Some(file.e.clone());
                }
                file.e = r;
            }
            Ok(file)
        }
    }
}

fn int_rat(x: i64) -> Rat {
    Rat::from_integer(x.into())
}

/// Correlation-matrix pencil: `x0` on the diagonal, `x_ij` off it.
fn elliptope(d: usize) -> InstanceFile {
    let mut vars = vec!["x0".to_string()];
    let mut index = vec![vec![0usize; d]; d];
    for i in 0..d {
        for j in i + 1..d {
            index[i][j] = vars.len();
            index[j][i] = vars.len();
            vars.push(format!("x{}{}", i + 1, j + 1));
        }
    }
    let n = vars.len();
    let a: Vec<Vec<SparsePoly>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| SparsePoly::var(n, if i == j { 0 } else { index[i][j] }))
                .collect()
        })
        .collect();
    let f = symbolic_det(&a);
    let mut e = vec![int_rat(0); n];
    e[0] = int_rat(1);
    let mut section = vec![int_rat(0); n];
    section[0] = int_rat(d as i64);
    let mut obj = vec![int_rat(0); n];
    obj[1] = int_rat(1);
    InstanceFile::from_parts(vars, &f, &e, Some(&section), &LinearForm::new(obj, int_rat(0)))
}

/// Coefficients of `x0..x3` in each entry of the 5x5 pencil.
const PENCIL: [[[i64; 4]; 5]; 5] = [
    [[1, 0, 0, 1], [0, 2, 0, 2], [0, 1, 0, 3], [0, 0, 1, 0], [0, 0, 1, 3]],
    [[0, 2, 0, 2], [1, 4, 0, 3], [0, 1, -1, 6], [0, 1, 1, -2], [0, 1, 1, 4]],
    [[0, 1, 0, 3], [0, 1, -1, 6], [1, 1, 0, 8], [0, -1, -1, -3], [0, -1, -1, 6]],
    [[0, 0, 1, 0], [0, 1, 1, -2], [0, -1, -1, -3], [1, 0, 1, 1], [0, 1, 2, -1]],
    [[0, 0, 1, 3], [0, 1, 1, 4], [0, -1, -1, 6], [0, 1, 2, -1], [1, 0, 1, 4]],
];

pub fn pencil_matrix() -> Vec<Vec<SparsePoly>> {
    PENCIL
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    let mut p = SparsePoly::zero(4);
                    for (i, &ci) in c.iter().enumerate() {
                        p = &p + &SparsePoly::var(4, i).scale(&int_rat(ci));
                    }
                    p
                })
                .collect()
        })
        .collect()
}

fn pencil5x5() -> InstanceFile {
    let a = pencil_matrix();
    let f = symbolic_det(&a);
    // trace(A(x)) = 1
    let mut trace = vec![int_rat(0); 4];
    for (i, row) in PENCIL.iter().enumerate() {
        for (k, c) in row[i].iter().enumerate() {
            trace[k] += int_rat(*c);
        }
    }
    let vars = (0..4).map(|i| format!("x{i}")).collect();
    let e = vec![int_rat(1), int_rat(0), int_rat(0), int_rat(0)];
    let obj = LinearForm::new(vec![int_rat(0), int_rat(1), int_rat(0), int_rat(0)], int_rat(0));
    InstanceFile::from_parts(vars, &f, &e, Some(&trace), &obj)
}

/// Degree-8 boundary polynomial of the 3-ellipse with foci (0,0), (3,0),
/// (0,4) and radius 8, in homogeneous coordinates `(x, y, z)`.
const ELLIPSE3: [(i64, [u32; 3]); 41] = [
    (9, [8, 0, 0]),
    (-72, [7, 0, 1]),
    (36, [6, 2, 0]),
    (-96, [6, 1, 1]),
    (-1564, [6, 0, 2]),
    (-216, [5, 2, 1]),
    (960, [5, 1, 2]),
    (9912, [5, 0, 3]),
    (54, [4, 4, 0]),
    (-288, [4, 3, 1]),
    (-4748, [4, 2, 2]),
    (12256, [4, 1, 3]),
    (70782, [4, 0, 4]),
    (-216, [3, 4, 1]),
    (1920, [3, 3, 2]),
    (17424, [3, 2, 3]),
    (-71040, [3, 1, 4]),
    (-262296, [3, 0, 5]),
    (36, [2, 6, 0]),
    (-288, [2, 5, 1]),
    (-4804, [2, 4, 2]),
    (27712, [2, 3, 3]),
    (137228, [2, 2, 4]),
    (-564384, [2, 1, 5]),
    (-616140, [2, 0, 6]),
    (-72, [1, 6, 1]),
    (960, [1, 5, 2]),
    (7512, [1, 4, 3]),
    (-76416, [1, 3, 4]),
    (-389688, [1, 2, 5]),
    (1372608, [1, 1, 6]),
    (1610280, [1, 0, 7]),
    (9, [0, 8, 0]),
    (-96, [0, 7, 1]),
    (-1620, [0, 6, 2]),
    (15456, [0, 5, 3]),
    (58014, [0, 4, 4]),
    (-349728, [0, 3, 5]),
    (-457380, [0, 2, 6]),
    (1723680, [0, 1, 7]),
    (893025, [0, 0, 8]),
];

fn ellipse3() -> InstanceFile {
    let f = SparsePoly::from_terms(3, ELLIPSE3.iter().map(|(c, m)| (m.to_vec(), int_rat(*c))));
    let vars = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let one = vec![int_rat(1); 3];
    let obj = LinearForm::new(vec![int_rat(1), int_rat(2), int_rat(3)], int_rat(4));
    let mut file = InstanceFile::from_parts(vars, &f, &one, Some(&one), &obj);
    // relaxations are taken along the z axis, the homogenizing direction of the plane z = 1
    file.relax = Some(vec!["0".into(), "0".into(), "1".into()]);
    file
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn builtin_names() {
        assert_eq!(Builtin::parse("elliptope3").unwrap(), Builtin::Elliptope(3));
        assert_eq!(Builtin::parse("elliptope(4)").unwrap(), Builtin::Elliptope(4));
        assert_eq!(
            Builtin::parse("derivative(ellipse3,5)").unwrap(),
            Builtin::Derivative(Box::new(Builtin::Ellipse3), 5)
        );
        assert!(Builtin::parse("elliptope9").is_err());
        assert!(Builtin::parse("cube").is_err());
    }

    #[test]
    fn elliptope2_data() {
        let file = make_instance(&Builtin::Elliptope(2)).unwrap();
        let f = file.polynomial().unwrap();
        let expect = SparsePoly::from_terms(2, [(vec![2, 0], int_rat(1)), (vec![0, 2], int_rat(-1))]);
        assert_eq!(f, expect);
        assert_eq!(file.section_form().unwrap().coeffs, vec![int_rat(2), int_rat(0)]);
    }

    #[test]
    fn ellipse_data() {
        let f = make_instance(&Builtin::Ellipse3).unwrap().polynomial().unwrap();
        assert_eq!(f.coeff(&Monomial(vec![8, 0, 0])), int_rat(9));
        assert_eq!(f.coeff(&Monomial(vec![7, 0, 1])), int_rat(-72));
        assert_eq!(f.coeff(&Monomial(vec![0, 0, 8])), int_rat(893025));
        assert!(f.is_homogeneous());
        assert!(f.evaluate(&[rat(3, 4), rat(0, 1), rat(1, 4)]).unwrap() == int_rat(0));
    }

    #[test]
    fn pencil_data() {
        let file = make_instance(&Builtin::Pencil5x5).unwrap();
        let f = file.polynomial().unwrap();
        assert_eq!(f.degree(), Some(5));
        assert!(f.evaluate(&[int_rat(1), int_rat(0), int_rat(0), int_rat(0)]).unwrap() == int_rat(1));
        assert_eq!(
            file.section_form().unwrap().coeffs,
            vec![int_rat(5), int_rat(5), int_rat(2), int_rat(17)]
        );
    }

    #[test]
    fn instance_errors() {
        let mut file = make_instance(&Builtin::Elliptope(2)).unwrap();
        file.objective.lin = vec!["2".into(), "0".into()];
        assert!(matches!(file.to_instance(), Err(InstanceError::Hp(HpError::DependentObjective))));
        let mut file = make_instance(&Builtin::Elliptope(2)).unwrap();
        file.f = vec![
            TermSpec { c: "1".into(), mono: vec![2, 0] },
            TermSpec { c: "1".into(), mono: vec![1, 0] },
        ];
        assert!(matches!(file.to_instance(), Err(InstanceError::Hyp(HypError::Poly(PolyError::NotHomogeneous)))));
        assert!(matches!(parse_instance("{"), Err(InstanceError::Malformed(_))));
    }
}
