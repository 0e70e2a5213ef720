//! JSON data-transfer schemas. Exact numbers travel as strings ("p/q" and
//! quadratic (a, b, s) triples) so the data path stays lossless.

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::novikov::{NovikovSeries, Trunc};
use crate::num::{format_rational, parse_rational, Cyclotomic, Gaussian, Quad, Rational};
use crate::polytope::{LatticePolytope, Point};
use crate::subdivision::WeightVector;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeJson {
    pub rank: usize,
    pub gram: Vec<Vec<i64>>,
}

impl LatticeJson {
    pub fn to_lattice(&self) -> Result<Arc<Lattice>> {
        if self.gram.len() != self.rank {
            return Err(Error::Json(format!(
                "rank {} does not match gram with {} rows",
                self.rank,
                self.gram.len()
            )));
        }
        Lattice::new(self.gram.clone())
    }

    pub fn from_lattice(l: &Lattice) -> Result<Self> {
        let gram = l
            .gram_i64()
            .ok_or_else(|| Error::Json("gram entries exceed i64 range".into()))?;
        Ok(LatticeJson { rank: l.rank(), gram })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorJson {
    pub coords: Vec<i64>,
}

impl VectorJson {
    pub fn to_vector(&self, l: &Arc<Lattice>) -> Result<LatticeVector> {
        l.vector(self.coords.clone())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorListJson {
    pub vectors: Vec<VectorJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub vertices: Vec<Vec<i64>>,
}

impl PolytopeJson {
    pub fn to_polytope(&self) -> Result<LatticePolytope> {
        LatticePolytope::from_vertices(self.vertices.clone())
    }

    pub fn from_polytope(p: &LatticePolytope) -> Self {
        PolytopeJson { vertices: p.vertices().to_vec() }
    }
}

/// Quadratic number a + b sqrt(s) with rational strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadJson {
    pub a: String,
    #[serde(default)]
    pub b: Option<String>,
    #[serde(default)]
    pub s: Option<u64>,
}

impl QuadJson {
    pub fn to_quad(&self) -> Result<Quad> {
        let a = parse_rational(&self.a).map_err(Error::Json)?;
        match (&self.b, self.s) {
            (None, _) => Ok(Quad::from_rational(a)),
            (Some(b), s) => {
                let b = parse_rational(b).map_err(Error::Json)?;
                let s = s.unwrap_or(1);
                Ok(Quad::new(s.max(1), a, b))
            }
        }
    }

    pub fn from_quad(q: &Quad) -> Self {
        QuadJson {
            a: format_rational(q.rational_part()),
            b: if q.surd_part() == &Rational::from_integer(0.into()) {
                None
            } else {
                Some(format_rational(q.surd_part()))
            },
            s: if q.field() == 1 { None } else { Some(q.field()) },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightsJson {
    pub values: Vec<QuadJson>,
}

impl WeightsJson {
    pub fn to_weights(&self, p_dual: &LatticePolytope) -> Result<WeightVector> {
        let vals: Result<Vec<Quad>> = self.values.iter().map(|v| v.to_quad()).collect();
        WeightVector::for_xi0(p_dual, vals?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesTermJson {
    pub exp: String,
    pub re: String,
    #[serde(default)]
    pub im: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesJson {
    pub trunc: String,
    pub terms: Vec<SeriesTermJson>,
}

impl SeriesJson {
    pub fn to_series(&self) -> Result<NovikovSeries> {
        let trunc = if self.trunc == "inf" {
            Trunc::Infinite
        } else {
            Trunc::Finite(parse_rational(&self.trunc).map_err(Error::Json)?)
        };
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let e = parse_rational(&t.exp).map_err(Error::Json)?;
            let re = parse_rational(&t.re).map_err(Error::Json)?;
            let im = match &t.im {
                Some(s) => parse_rational(s).map_err(Error::Json)?,
                None => Rational::from_integer(0.into()),
            };
            terms.push((e, Gaussian::new(re, im)));
        }
        NovikovSeries::new(terms, trunc)
    }

    pub fn from_series(s: &NovikovSeries) -> Self {
        SeriesJson {
            trunc: match s.trunc() {
                Trunc::Infinite => "inf".to_string(),
                Trunc::Finite(t) => format_rational(t),
            },
            terms: s
                .terms()
                .iter()
                .map(|(e, c)| SeriesTermJson {
                    exp: format_rational(e),
                    re: format_rational(&c.re),
                    im: if c.im == Rational::from_integer(0.into()) {
                        None
                    } else {
                        Some(format_rational(&c.im))
                    },
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesListJson {
    pub series: Vec<SeriesJson>,
}

/// Cyclotomic number as a sum of c * zeta_24^k terms.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycTermJson {
    pub c: String,
    #[serde(default)]
    pub k: i64,
}

pub type CycJson = Vec<CycTermJson>;

pub fn cyc_from_json(terms: &CycJson) -> Result<Cyclotomic> {
    let mut acc = Cyclotomic::zero();
    for t in terms {
        let c = parse_rational(&t.c).map_err(Error::Json)?;
        let z = Cyclotomic::zeta_pow(t.k);
        acc = acc + z * Cyclotomic::from_rational(c);
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycPointJson {
    pub coords: Vec<CycJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrickeElementJson {
    pub m: [[i64; 2]; 2],
    #[serde(default)]
    pub fricke: bool,
}

impl FrickeElementJson {
    pub fn to_element(&self, n: u32) -> Result<crate::fricke::FrickeElement> {
        crate::fricke::FrickeElement::new(
            n,
            crate::fricke::Mat2::new(self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]),
            self.fricke,
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorsJson {
    pub generators: Vec<FrickeElementJson>,
}

/// Free-product word letters: {"t": k} or {"s": e}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WordJson {
    pub p: u32,
    pub letters: Vec<serde_json::Value>,
}

impl WordJson {
    pub fn to_word(&self) -> Result<crate::words::FreeProductWord> {
        let mut letters = Vec::with_capacity(self.letters.len());
        for (i, l) in self.letters.iter().enumerate() {
            let obj = l
                .as_object()
                .ok_or_else(|| Error::Json(format!("letter {i} must be an object")))?;
            if let Some(v) = obj.get("t") {
                let k = v
                    .as_i64()
                    .ok_or_else(|| Error::Json(format!("letter {i}: t exponent must be an integer")))?;
                letters.push(crate::words::Letter::T(k));
            } else if let Some(v) = obj.get("s") {
                let e = v
                    .as_i64()
                    .ok_or_else(|| Error::Json(format!("letter {i}: s exponent must be an integer")))?;
                let e = e.rem_euclid(self.p as i64) as u32;
                if e == 0 {
                    continue;
                }
                letters.push(crate::words::Letter::S(e));
            } else {
                return Err(Error::Json(format!("letter {i}: expected a \"t\" or \"s\" key")));
            }
        }
        crate::words::FreeProductWord::from_letters(self.p, &letters)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HyperplanesJson {
    pub hyperplanes: Vec<Vec<String>>,
}

impl HyperplanesJson {
    pub fn to_rows(&self) -> Result<Vec<Vec<Rational>>> {
        self.hyperplanes
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_rational(s).map_err(Error::Json))
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LambdaJson {
    pub lambda: Vec<QuadJson>,
}

/// Omega (+ kappa) input for the bounded K0 scan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct K0InputJson {
    pub lattice: LatticeJson,
    pub re: Vec<QuadJson>,
    pub im: Vec<QuadJson>,
    #[serde(default)]
    pub im_scale_sq: Option<QuadJson>,
    pub kappa: Vec<i64>,
}

pub fn points_json(points: &[Point]) -> serde_json::Value {
    serde_json::json!(points)
}
