//! JSON schemas and serialization.
//!
//! Rationals serialize as decimal strings `"p/q"` (or `"p"` when the
//! denominator is one); vectors as arrays of such strings; matrices as
//! row-major arrays of rows. Instance and certificate files carry a
//! `"schema": "orbitcert/1"` marker.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::instance::{OrbitInstance, Ring};
use crate::multipoly::MultiPoly;
use crate::polyalg::algnum::AlgebraicNumber;
use crate::polyalg::poly::Poly;
use crate::predicate::{Atom, Predicate};
use crate::ratmat::{parse_rat, rat_to_string, Rat, RatMatrix, RatVector};
use crate::Result;

pub const SCHEMA: &str = "orbitcert/1";

/// Serde adapter for `Rat` fields.
pub mod rat_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let text = String::deserialize(d)?;
        parse_rat(&text).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Serde adapter for `Option<Rat>` fields.
pub mod rat_opt {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(v) => s.serialize_some(&rat_to_string(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rat>, D::Error> {
        let text: Option<String> = Option::deserialize(d)?;
        match text {
            None => Ok(None),
            Some(t) => parse_rat(&t)
                .map(Some)
                .map_err(|e| D::Error::custom(e.to_string())),
        }
    }
}

impl Serialize for RatVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.iter().map(rat_to_string).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings: Vec<String> = Vec::deserialize(d)?;
        let entries = strings
            .iter()
            .map(|t| parse_rat(t))
            .collect::<Result<Vec<Rat>>>()
            .map_err(|e| D::Error::custom(e.to_string()))?;
        Ok(RatVector::new(entries))
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows())
            .map(|r| (0..self.cols()).map(|c| rat_to_string(self.get(r, c))).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        if rows.is_empty() {
            return Err(D::Error::custom("matrix needs at least one row"));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(D::Error::custom("matrix rows must have equal length"));
        }
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            let entries = row
                .iter()
                .map(|t| parse_rat(t))
                .collect::<Result<Vec<Rat>>>()
                .map_err(|e| D::Error::custom(e.to_string()))?;
            parsed.push(entries);
        }
        Ok(RatMatrix::from_rows(parsed))
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Constant term first.
        let strings: Vec<String> = self.coeffs().iter().map(rat_to_string).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings: Vec<String> = Vec::deserialize(d)?;
        let coeffs = strings
            .iter()
            .map(|t| parse_rat(t))
            .collect::<Result<Vec<Rat>>>()
            .map_err(|e| D::Error::custom(e.to_string()))?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

#[derive(Serialize, Deserialize)]
struct MultiPolyRepr {
    vars: usize,
    terms: Vec<(Vec<u32>, String)>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = MultiPolyRepr {
            vars: self.vars(),
            terms: self
                .terms()
                .map(|(e, c)| (e.clone(), rat_to_string(c)))
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MultiPolyRepr::deserialize(d)?;
        let mut p = MultiPoly::zero(repr.vars);
        for (e, c) in repr.terms {
            if e.len() != repr.vars {
                return Err(D::Error::custom("exponent vector length mismatch"));
            }
            let coeff = parse_rat(&c).map_err(|err| D::Error::custom(err.to_string()))?;
            p = p.add(&MultiPoly::monomial(e, coeff));
        }
        Ok(p)
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraicRepr {
    poly: Poly,
    re: (String, String),
    im: (String, String),
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (rl, rh) = self.re_interval();
        let (il, ih) = self.im_interval();
        AlgebraicRepr {
            poly: self.poly().clone(),
            re: (rat_to_string(rl), rat_to_string(rh)),
            im: (rat_to_string(il), rat_to_string(ih)),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = AlgebraicRepr::deserialize(d)?;
        let parse = |t: &str| parse_rat(t).map_err(|e| D::Error::custom(e.to_string()));
        Ok(AlgebraicNumber::complex(
            &repr.poly,
            (parse(&repr.re.0)?, parse(&repr.re.1)?),
            (parse(&repr.im.0)?, parse(&repr.im.1)?),
        ))
    }
}

/// On-disk orbit problem instance.
///
/// With `affine: true` the matrix is the `d x (d+1)` block `[M | b]` of an
/// affine map `v -> Mv + b`; loading embeds it as the linear map on
/// `(v, one)` by appending the row `(0, ..., 0, 1)` and extends both vectors
/// with the constant coordinate `1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema: String,
    pub matrix: RatMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<RatVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<RatVector>,
    #[serde(default = "default_ring")]
    pub ring: Ring,
    #[serde(default)]
    pub affine: bool,
}

fn default_ring() -> Ring {
    Ring::Q
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Schema {
            detail: e.to_string(),
        })?;
        if file.schema != SCHEMA {
            return Err(Error::Schema {
                detail: format!("unsupported schema {:?}, expected {:?}", file.schema, SCHEMA),
            });
        }
        Ok(file)
    }

    /// The (possibly affine-embedded) square matrix.
    pub fn embedded_matrix(&self) -> Result<RatMatrix> {
        if !self.affine {
            if !self.matrix.is_square() {
                return Err(Error::Schema {
                    detail: format!(
                        "matrix must be square, got {}x{}",
                        self.matrix.rows(),
                        self.matrix.cols()
                    ),
                });
            }
            return Ok(self.matrix.clone());
        }
        let d = self.matrix.rows();
        if self.matrix.cols() != d + 1 {
            return Err(Error::Schema {
                detail: format!(
                    "affine matrix must be d x (d+1), got {}x{}",
                    self.matrix.rows(),
                    self.matrix.cols()
                ),
            });
        }
        let mut m = RatMatrix::zero(d + 1, d + 1);
        for r in 0..d {
            for c in 0..=d {
                *m.get_mut(r, c) = self.matrix.get(r, c).clone();
            }
        }
        *m.get_mut(d, d) = crate::ratmat::rat_int(1);
        Ok(m)
    }

    /// Builds the runnable instance; errors if start/target are missing.
    pub fn to_instance(&self) -> Result<OrbitInstance> {
        let a = self.embedded_matrix()?;
        let (Some(start), Some(target)) = (&self.start, &self.target) else {
            return Err(Error::Schema {
                detail: "instance file needs both start and target vectors".to_string(),
            });
        };
        let (x, y) = if self.affine {
            (
                start.extended(crate::ratmat::rat_int(1)),
                target.extended(crate::ratmat::rat_int(1)),
            )
        } else {
            (start.clone(), target.clone())
        };
        OrbitInstance::new(a, x, y, self.ring)
    }
}

/// Renders the SMT-LIB2 query asserting that the target satisfies the
/// certificate set; an external solver confirming `unsat` has confirmed
/// condition 3 (the target lies outside the set).
pub fn smtlib_query(set: &Predicate, target: &RatVector) -> Result<String> {
    let mut out = String::new();
    out.push_str("; orbitcert/1 condition-3 query: unsat confirms the target avoids the set\n");
    out.push_str("(set-logic QF_NRA)\n");
    let mut aux_decls = Vec::new();
    let mut int_decls = 0usize;
    let body = smt_pred(set, target, &mut aux_decls, &mut int_decls)?;
    for decl in &aux_decls {
        out.push_str(decl);
        out.push('\n');
    }
    out.push_str(&format!("(assert {body})\n"));
    out.push_str("(check-sat)\n");
    Ok(out)
}

fn smt_rat(r: &Rat) -> String {
    use num_traits::{One, Signed};
    let (n, d) = (r.numer(), r.denom());
    let core = if d.is_one() {
        format!("{}", n.abs())
    } else {
        format!("(/ {} {})", n.abs(), d)
    };
    if n.is_negative() {
        format!("(- {core})")
    } else {
        core
    }
}

fn smt_poly(p: &MultiPoly, target: &RatVector, aux_base: usize) -> String {
    use num_traits::Zero;
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (e, c) in p.terms() {
        let mut factors = vec![smt_rat(c)];
        for (i, &exp) in e.iter().enumerate() {
            let base = if i < target.dim() {
                smt_rat(target.get(i))
            } else {
                format!("aux{}", aux_base + (i - target.dim()))
            };
            for _ in 0..exp {
                factors.push(base.clone());
            }
        }
        let term = if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            format!("(* {})", factors.join(" "))
        };
        if !c.is_zero() {
            terms.push(term);
        }
    }
    if terms.len() == 1 {
        terms.pop().unwrap()
    } else {
        format!("(+ {})", terms.join(" "))
    }
}

fn smt_pred(
    p: &Predicate,
    target: &RatVector,
    aux_decls: &mut Vec<String>,
    int_decls: &mut usize,
) -> Result<String> {
    Ok(match p {
        Predicate::And { items } => {
            if items.is_empty() {
                "true".to_string()
            } else {
                let parts = items
                    .iter()
                    .map(|q| smt_pred(q, target, aux_decls, int_decls))
                    .collect::<Result<Vec<_>>>()?;
                format!("(and {})", parts.join(" "))
            }
        }
        Predicate::Or { items } => {
            if items.is_empty() {
                "false".to_string()
            } else {
                let parts = items
                    .iter()
                    .map(|q| smt_pred(q, target, aux_decls, int_decls))
                    .collect::<Result<Vec<_>>>()?;
                format!("(or {})", parts.join(" "))
            }
        }
        Predicate::Atom { atom } => {
            let aux_base = aux_decls.len();
            match atom {
                Atom::PolyEq { poly, rhs } => {
                    format!("(= {} {})", smt_poly(poly, target, aux_base), smt_rat(rhs))
                }
                Atom::PolyLe { poly, rhs } => {
                    format!("(<= {} {})", smt_poly(poly, target, aux_base), smt_rat(rhs))
                }
                Atom::PolyLt { poly, rhs } => {
                    format!("(< {} {})", smt_poly(poly, target, aux_base), smt_rat(rhs))
                }
                Atom::AbsCmp { form, cmp, bound } => {
                    let v = smt_poly(&MultiPoly::from_linear_form(form), target, aux_base);
                    let b = smt_rat(bound);
                    match cmp {
                        crate::predicate::Cmp::Ge => format!("(or (>= {v} {b}) (<= {v} (- {b})))"),
                        crate::predicate::Cmp::Gt => format!("(or (> {v} {b}) (< {v} (- {b})))"),
                        crate::predicate::Cmp::Le => format!("(and (<= {v} {b}) (>= {v} (- {b})))"),
                        crate::predicate::Cmp::Lt => format!("(and (< {v} {b}) (> {v} (- {b})))"),
                    }
                }
                Atom::Congruence {
                    form,
                    modulus,
                    threshold,
                } => {
                    let v = smt_poly(&MultiPoly::from_linear_form(form), target, aux_base);
                    let k = format!("k{}", *int_decls);
                    *int_decls += 1;
                    aux_decls.push(format!("(declare-const {k} Int)"));
                    let mut q = format!("(= {v} (* {} (to_real {k})))", smt_rat(modulus));
                    if let Some(t) = threshold {
                        q = format!("(and {q} (>= {v} {}))", smt_rat(t));
                    }
                    q
                }
                Atom::AuxRoot {
                    defining, lo, hi, body, ..
                } => {
                    let name = format!("aux{aux_base}");
                    aux_decls.push(format!("(declare-const {name} Real)"));
                    // defining(aux) = 0 as a univariate polynomial.
                    let mut terms = Vec::new();
                    for (i, c) in defining.coeffs().iter().enumerate() {
                        use num_traits::Zero;
                        if c.is_zero() {
                            continue;
                        }
                        let mut factors = vec![smt_rat(c)];
                        for _ in 0..i {
                            factors.push(name.clone());
                        }
                        terms.push(if factors.len() == 1 {
                            factors.pop().unwrap()
                        } else {
                            format!("(* {})", factors.join(" "))
                        });
                    }
                    let poly = if terms.len() == 1 {
                        terms.pop().unwrap()
                    } else {
                        format!("(+ {})", terms.join(" "))
                    };
                    let mut parts = vec![format!("(= {poly} 0)")];
                    if let Some(l) = lo {
                        parts.push(format!("(>= {name} {})", smt_rat(l)));
                    }
                    if let Some(h) = hi {
                        parts.push(format!("(<= {name} {})", smt_rat(h)));
                    }
                    parts.push(smt_pred(body, target, aux_decls, int_decls)?);
                    format!("(and {})", parts.join(" "))
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::{rat, rat_int};

    #[test]
    fn instance_file_round_trip() {
        let text = r#"{
            "schema": "orbitcert/1",
            "matrix": [["0","3","0","0"],["-3","3","1","0"],["0","0","2","1"],["1","1","0","1"]],
            "start": ["1","1","1","1"],
            "target": ["-9","-7","28","7"],
            "ring": "Q"
        }"#;
        let file = InstanceFile::parse(text).unwrap();
        let inst = file.to_instance().unwrap();
        assert_eq!(inst.dim(), 4);
        assert_eq!(inst.x, RatVector::from_ints(&[1, 1, 1, 1]));

        let json = serde_json::to_string(&file).unwrap();
        let again = InstanceFile::parse(&json).unwrap();
        assert_eq!(again.matrix, file.matrix);
    }

    #[test]
    fn affine_embedding() {
        let text = r#"{
            "schema": "orbitcert/1",
            "matrix": [["1","2"]],
            "start": ["0"],
            "target": ["5"],
            "ring": "Q",
            "affine": true
        }"#;
        let inst = InstanceFile::parse(text).unwrap().to_instance().unwrap();
        assert_eq!(inst.dim(), 2);
        assert_eq!(inst.a, RatMatrix::from_ints(&[&[1, 2], &[0, 1]]));
        assert_eq!(inst.x, RatVector::from_ints(&[0, 1]));
        assert_eq!(inst.y, RatVector::from_ints(&[5, 1]));
    }

    #[test]
    fn schema_violations_reported() {
        assert!(InstanceFile::parse("{}").is_err());
        let wrong = r#"{"schema": "other/9", "matrix": [["1"]]}"#;
        assert!(matches!(
            InstanceFile::parse(wrong),
            Err(Error::Schema { .. })
        ));
        let decimals = r#"{
            "schema": "orbitcert/1",
            "matrix": [["0.8","-0.6"],["0.6","0.8"]],
            "start": ["1","0"],
            "target": ["1.5","0.7"],
            "ring": "Q"
        }"#;
        let inst = InstanceFile::parse(decimals).unwrap().to_instance().unwrap();
        assert_eq!(inst.a.get(0, 0), &rat(4, 5));
        assert_eq!(inst.y.get(0), &rat(3, 2));
    }

    #[test]
    fn ring_z_requires_integers() {
        let text = r#"{
            "schema": "orbitcert/1",
            "matrix": [["1/2"]],
            "start": ["1"],
            "target": ["2"],
            "ring": "Z"
        }"#;
        assert!(InstanceFile::parse(text).unwrap().to_instance().is_err());
    }

    #[test]
    fn smtlib_export_shapes() {
        let q = MultiPoly::var(2, 0).pow(2).add(&MultiPoly::var(2, 1).pow(2));
        let set = Predicate::poly_eq(q, rat_int(1));
        let y = RatVector::new(vec![rat(3, 2), rat(7, 10)]);
        let smt = smtlib_query(&set, &y).unwrap();
        assert!(smt.contains("(set-logic QF_NRA)"));
        assert!(smt.contains("(check-sat)"));
        assert!(smt.contains("(/ 3 2)"));
    }

    #[test]
    fn poly_json_constant_first() {
        let p = Poly::from_ints(&[15, -34, 20, -6, 1]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["15","-34","20","-6","1"]"#);
        let back: Poly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
