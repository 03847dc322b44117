//! Built-in bases for the worked symmetric spaces: the sphere
//! `SO(3)/SO(2)`, the special Euclidean group `SE(3)` with its seven
//! Lie-triple-system classes, the 3x3 symmetric matrices behind the
//! Gaussian orthogonal ensemble, and `SU(3)/SO(3)` behind the circular
//! orthogonal ensemble.
//!
//! Entries carry provenance notes recording two corrections to the
//! published tables (both forced by the tables' own bracket
//! identities) and, for the GOE basis, the published double-bracket
//! claims that direct computation contradicts. Reports keep the
//! computed values and surface the published ones side by side.

use num_complex::Complex64;
use serde::Serialize;

use crate::engine::GeneratorSet;
use crate::error::Error;
use crate::matrix::{double_bracket, Matrix};
use crate::Result;

/// All catalog ids, in listing order.
pub const IDS: [&str; 11] = [
    "so3_mod_so2",
    "se3_full",
    "se3_lts_1",
    "se3_lts_2",
    "se3_lts_3",
    "se3_lts_4",
    "se3_lts_5",
    "se3_lts_6",
    "se3_lts_7",
    "goe_sym3",
    "coe_su3_mod_so3",
];

/// One ambient basis element with the index its label carries
/// (`"e4"` -> 4); word leaves refer to these indices.
#[derive(Clone, Debug)]
pub struct CatalogElement {
    pub label: String,
    pub index: usize,
    pub matrix: Matrix,
}

/// A published double-bracket identity that disagrees with direct
/// computation. Both sides are kept; `--paper-mode` reports render
/// them together.
#[derive(Clone, Debug, Serialize)]
pub struct BracketClaim {
    pub published: String,
    pub computed: String,
}

/// A named symmetric-space basis: the full ambient family, the
/// suggested control subset, the manifold dimension the closure must
/// reach, and provenance notes.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub elements: Vec<CatalogElement>,
    /// Labels of the suggested controls (the published choice).
    pub suggested: Vec<&'static str>,
    /// For entries whose published suggestion fails the rank test, a
    /// verified controllable alternative.
    pub verified_alternative: Option<Vec<&'static str>>,
    pub target_dim: usize,
    pub pitch: Option<f64>,
    pub provenance: Vec<&'static str>,
    pub claims: Vec<BracketClaim>,
}

impl CatalogEntry {
    pub fn labels(&self) -> Vec<&str> {
        self.elements.iter().map(|e| e.label.as_str()).collect()
    }

    pub fn ambient(&self) -> Vec<Matrix> {
        self.elements.iter().map(|e| e.matrix.clone()).collect()
    }

    /// The ambient family as an indexed generator set.
    pub fn ambient_set(&self) -> Result<GeneratorSet> {
        GeneratorSet::with_indices(
            self.elements
                .iter()
                .map(|e| (e.index, e.matrix.clone()))
                .collect(),
        )
    }

    /// The suggested controls as an indexed generator set.
    pub fn generator_set(&self) -> Result<GeneratorSet> {
        self.select(&self.suggested)
    }

    /// Selects ambient elements by label (exact match) or by bare
    /// index digits.
    pub fn select<S: AsRef<str>>(&self, labels: &[S]) -> Result<GeneratorSet> {
        let mut pairs = Vec::with_capacity(labels.len());
        for want in labels {
            let want = want.as_ref();
            let found = self
                .elements
                .iter()
                .find(|e| e.label == want || e.index.to_string() == want)
                .ok_or_else(|| Error::UnknownEntry(format!("{}::{want}", self.id)))?;
            pairs.push((found.index, found.matrix.clone()));
        }
        GeneratorSet::with_indices(pairs)
    }

    /// Integer-rescaled copy of the ambient basis: spans and bracket
    /// identities are scale-invariant per element, so exact checks can
    /// run on this form even when the instantiated basis has floating
    /// normalizations (the su(3) `Z8`).
    pub fn exact_ambient(&self) -> Vec<Matrix> {
        self.elements
            .iter()
            .map(|e| {
                if e.matrix.is_exact() {
                    return e.matrix.clone();
                }
                for scale in [3.0f64.sqrt(), 2.0, 4.0] {
                    let scaled = e.matrix.scale(scale);
                    let rounded = round_entries(&scaled);
                    if rounded.is_exact() && scaled.approx_eq(&rounded, 1e-9) {
                        return rounded;
                    }
                }
                e.matrix.clone()
            })
            .collect()
    }
}

fn round_entries(m: &Matrix) -> Matrix {
    let n = m.dim();
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let z = m.get(i, j);
            out.set(i, j, Complex64::new(z.re.round(), z.im.round()));
        }
    }
    out
}

/// Summary line for the listing: id, manifold dimension, description.
#[derive(Clone, Debug, Serialize)]
pub struct EntrySummary {
    pub id: &'static str,
    pub dim: usize,
    pub description: &'static str,
}

/// Deterministic listing of every catalog entry.
pub fn list_entries() -> Vec<EntrySummary> {
    IDS.iter()
        .map(|id| {
            let entry = get(id, pitch_default(id)).expect("builtin entries instantiate");
            EntrySummary {
                id: entry.id,
                dim: entry.target_dim,
                description: entry.description,
            }
        })
        .collect()
}

fn pitch_default(id: &str) -> Option<f64> {
    (id == "se3_lts_2").then_some(1.0)
}

/// Instantiates a catalog entry. `se3_lts_2` requires the screw pitch.
pub fn get(id: &str, pitch: Option<f64>) -> Result<CatalogEntry> {
    match id {
        "so3_mod_so2" => Ok(so3_mod_so2()),
        "se3_full" => Ok(se3_full()),
        "se3_lts_1" => Ok(se3_lts(1, None)?),
        "se3_lts_2" => match pitch {
            Some(p) if p.is_finite() => Ok(se3_lts(2, Some(p))?),
            Some(_) => Err(Error::NonFinite),
            None => Err(Error::MissingParam("pitch")),
        },
        "se3_lts_3" => Ok(se3_lts(3, None)?),
        "se3_lts_4" => Ok(se3_lts(4, None)?),
        "se3_lts_5" => Ok(se3_lts(5, None)?),
        "se3_lts_6" => Ok(se3_lts(6, None)?),
        "se3_lts_7" => Ok(se3_lts(7, None)?),
        "goe_sym3" => Ok(goe_sym3()),
        "coe_su3_mod_so3" => Ok(coe_su3_mod_so3()),
        other => Err(Error::UnknownEntry(other.to_string())),
    }
}

// ---- so(3) ----------------------------------------------------------

fn so3_x(k: usize) -> Matrix {
    match k {
        1 => Matrix::from_int_rows(&[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]),
        2 => Matrix::from_int_rows(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]),
        3 => Matrix::from_int_rows(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]),
        _ => unreachable!(),
    }
}

fn so3_mod_so2() -> CatalogEntry {
    CatalogEntry {
        id: "so3_mod_so2",
        description: "the 2-sphere as SO(3)/SO(2); rotation generators X1, X2",
        elements: vec![
            CatalogElement {
                label: "X1".into(),
                index: 1,
                matrix: so3_x(1),
            },
            CatalogElement {
                label: "X2".into(),
                index: 2,
                matrix: so3_x(2),
            },
        ],
        suggested: vec!["X1", "X2"],
        verified_alternative: None,
        target_dim: 2,
        pitch: None,
        provenance: vec!["X3 = [X1,X2] completes so(3); the X3 direction is the isotropy so(2)"],
        claims: Vec::new(),
    }
}

// ---- se(3) ----------------------------------------------------------

/// Basis of se(3): translations e1..e3, rotations e4..e6. The
/// published e6 carries a stray 1 at entry (1,4); it is corrected here
/// to the pure z-rotation generator, the unique form consistent with
/// [e4,e5] = e6 and the translation brackets.
pub fn se3_e(k: usize) -> Matrix {
    match k {
        1 => Matrix::unit(4, 0, 3),
        2 => Matrix::unit(4, 1, 3),
        3 => Matrix::unit(4, 2, 3),
        4 => Matrix::unit(4, 2, 1).sub(&Matrix::unit(4, 1, 2)),
        5 => Matrix::unit(4, 0, 2).sub(&Matrix::unit(4, 2, 0)),
        6 => Matrix::unit(4, 1, 0).sub(&Matrix::unit(4, 0, 1)),
        _ => unreachable!("se(3) has six basis elements"),
    }
}

const E6_NOTE: &str =
    "printed e6 has a stray (1,4) entry; corrected to the pure z-rotation generator so that [e4,e5] = e6";

fn se3_elements(indices: &[usize], pitch: Option<f64>) -> Vec<CatalogElement> {
    indices
        .iter()
        .map(|&k| {
            if let (4, Some(p)) = (k, pitch) {
                CatalogElement {
                    label: "e4+p*e1".into(),
                    index: 4,
                    matrix: se3_e(4).add(&se3_e(1).scale(p)),
                }
            } else {
                CatalogElement {
                    label: format!("e{k}"),
                    index: k,
                    matrix: se3_e(k),
                }
            }
        })
        .collect()
}

fn se3_full() -> CatalogEntry {
    CatalogEntry {
        id: "se3_full",
        description: "the full se(3) basis: translations e1..e3, rotations e4..e6",
        elements: se3_elements(&[1, 2, 3, 4, 5, 6], None),
        suggested: vec!["e1", "e2", "e3", "e4", "e5", "e6"],
        verified_alternative: None,
        target_dim: 6,
        pitch: None,
        provenance: vec![E6_NOTE],
        claims: Vec::new(),
    }
}

fn se3_lts(class: usize, pitch: Option<f64>) -> Result<CatalogEntry> {
    let (indices, description): (&[usize], &'static str) = match class {
        1 => (
            &[3, 4],
            "screw class {e3, e4}: z-translation with x-rotation",
        ),
        2 => (
            &[3, 4],
            "screw class {e3, e4 + p*e1}: pitch p couples x-translation into the rotation",
        ),
        3 => (&[4, 5], "rotation pair {e4, e5}"),
        4 => (&[1, 3, 4], "class {e1, e3, e4}"),
        5 => (&[3, 4, 5], "class {e3, e4, e5}"),
        6 => (&[1, 2, 4, 5], "class {e1, e2, e4, e5}"),
        7 => (&[1, 2, 3, 4, 5], "class {e1, e2, e3, e4, e5}"),
        _ => unreachable!(),
    };
    let elements = se3_elements(indices, if class == 2 { pitch } else { None });
    let target_dim = elements.len();
    let (suggested, alternative): (Vec<&'static str>, Option<Vec<&'static str>>) = match class {
        1 => (vec!["e3", "e4"], None),
        2 => (vec!["e3", "e4+p*e1"], None),
        3 => (vec!["e4", "e5"], None),
        4 => (vec!["e1", "e3", "e4"], None),
        5 => (vec!["e3", "e4", "e5"], None),
        // The published fewer-control choices for the two submanifolds
        // treated in detail.
        6 => (vec!["e2", "e4", "e5"], None),
        7 => (vec!["e1", "e3", "e4", "e5"], None),
        _ => unreachable!(),
    };
    let mut provenance =
        vec!["one of the seven conjugacy classes of symmetric submanifolds of SE(3)"];
    if class == 2 {
        provenance.push("p = 0 degenerates to the {e3, e4} class");
    }
    Ok(CatalogEntry {
        id: match class {
            1 => "se3_lts_1",
            2 => "se3_lts_2",
            3 => "se3_lts_3",
            4 => "se3_lts_4",
            5 => "se3_lts_5",
            6 => "se3_lts_6",
            7 => "se3_lts_7",
            _ => unreachable!(),
        },
        description,
        elements,
        suggested,
        verified_alternative: alternative,
        target_dim,
        pitch: if class == 2 { pitch } else { None },
        provenance,
        claims: Vec::new(),
    })
}

// ---- GOE: 3x3 symmetric matrices ------------------------------------

/// Basis of 3x3 symmetric matrices. The published a6 is not symmetric
/// (stray (2,1) entry); the evident intent E23 + E32 is used.
pub fn goe_a(k: usize) -> Matrix {
    let e = |i, j| Matrix::unit(3, i, j);
    match k {
        1 => e(0, 0),
        2 => e(1, 1),
        3 => e(2, 2),
        4 => e(0, 1).add(&e(1, 0)),
        5 => e(0, 2).add(&e(2, 0)),
        6 => e(1, 2).add(&e(2, 1)),
        _ => unreachable!("sym(3) has six basis elements"),
    }
}

fn goe_sym3() -> CatalogEntry {
    CatalogEntry {
        id: "goe_sym3",
        description: "3x3 symmetric matrices, the tangent family of the GOE integration manifold",
        elements: (1..=6)
            .map(|k| CatalogElement {
                label: format!("a{k}"),
                index: k,
                matrix: goe_a(k),
            })
            .collect(),
        suggested: vec!["a1", "a3", "a4"],
        verified_alternative: Some(vec!["a1", "a4", "a6"]),
        target_dim: 6,
        pitch: None,
        provenance: vec![
            "printed a6 is not symmetric (stray (2,1) entry); corrected to E23 + E32",
            "the published control set {a1,a3,a4} closes at dimension 4, not 6: index 3 never couples to the {1,2} block",
            "{a1,a4,a6} is a verified controllable alternative with three controls",
        ],
        claims: vec![
            BracketClaim {
                published: "[[a1,a4],a4] = -2 a2".into(),
                computed: "[[a1,a4],a4] = 2 a1 - 2 a2".into(),
            },
            BracketClaim {
                published: "[[a2,a4],a4] = a6".into(),
                computed: "[[a2,a4],a4] = 2 a2 - 2 a1".into(),
            },
            BracketClaim {
                published: "[[a2,a6],a4] = a5".into(),
                computed: "[[a2,a6],a4] = -a5".into(),
            },
        ],
    }
}

// ---- COE: su(3)/so(3) ------------------------------------------------

/// The eight Gell-Mann generators of su(3). Z8 carries the 1/sqrt(3)
/// normalization, materialized as floating point.
pub fn gell_mann(k: usize) -> Matrix {
    let e = |i, j| Matrix::unit(3, i, j);
    let i_unit = Complex64::new(0.0, 1.0);
    match k {
        1 => e(0, 1).add(&e(1, 0)),
        2 => e(0, 1).neg().add(&e(1, 0)).scale_complex(i_unit),
        3 => e(0, 0).sub(&e(1, 1)),
        4 => e(0, 2).add(&e(2, 0)),
        5 => e(0, 2).neg().add(&e(2, 0)).scale_complex(i_unit),
        6 => e(1, 2).add(&e(2, 1)),
        7 => e(1, 2).neg().add(&e(2, 1)).scale_complex(i_unit),
        8 => e(0, 0)
            .add(&e(1, 1))
            .sub(&e(2, 2).scale(2.0))
            .scale(1.0 / 3.0f64.sqrt()),
        _ => unreachable!("su(3) has eight generators"),
    }
}

fn coe_su3_mod_so3() -> CatalogEntry {
    CatalogEntry {
        id: "coe_su3_mod_so3",
        description: "SU(3)/SO(3), the COE integration manifold; symmetric Gell-Mann generators",
        elements: [1usize, 3, 4, 6, 8]
            .iter()
            .map(|&k| CatalogElement {
                label: format!("Z{k}"),
                index: k,
                matrix: gell_mann(k),
            })
            .collect(),
        suggested: vec!["Z1", "Z3", "Z4", "Z8"],
        verified_alternative: None,
        target_dim: 5,
        pitch: None,
        provenance: vec![
            "Z2, Z5, Z7 span the so(3) isotropy; the symmetric generators Z1, Z3, Z4, Z6, Z8 span the complement",
            "Z8 normalization 1/sqrt(3) is floating point; exact checks use the integer-rescaled sqrt(3)*Z8",
        ],
        claims: Vec::new(),
    }
}

/// Evaluates each recorded claim's computed side, confirming the
/// catalog's divergence notes against live arithmetic. Used by tests
/// and by `--paper-mode` rendering.
pub fn goe_divergences() -> Result<Vec<(BracketClaim, Matrix)>> {
    let entry = goe_sym3();
    let a = |k: usize| goe_a(k);
    let computed = [
        double_bracket(&a(1), &a(4), &a(4))?,
        double_bracket(&a(2), &a(4), &a(4))?,
        double_bracket(&a(2), &a(6), &a(4))?,
    ];
    Ok(entry.claims.into_iter().zip(computed).collect())
}
