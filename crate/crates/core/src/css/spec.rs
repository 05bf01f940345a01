//! JSON code descriptions.
//!
//! ```json
//! {"m": 4, "x": [[0,1],[2,3]], "z": [[0,2],[1,3]],
//!  "components": [{"hx": [[1,1]], "hz": [[1,1]]}, ...]}
//! ```
//!
//! `components` is optional and defaults to `m` copies of `([1 1], [1 1])`.

use serde::{Deserialize, Serialize};

use super::{build_css, ComponentPair, CssCode};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::posets::SubsetTuple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub hx: Vec<Vec<u8>>,
    pub hz: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentSpec>>,
    pub m: usize,
    pub x: Vec<Vec<usize>>,
    pub z: Vec<Vec<usize>>,
}

fn matrix(rows: &[Vec<u8>], what: &str) -> Result<BitMatrix> {
    let cols = rows
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::InvalidSpec(format!("{what} has no rows; give the column count with a zero row")))?;
    if rows.iter().flatten().any(|&b| b > 1) {
        return Err(Error::InvalidSpec(format!("{what} entries must be 0 or 1")));
    }
    let m = BitMatrix::from_rows(cols, rows)?;
    Ok(m.nonzero_rows())
}

impl CodeSpec {
    pub fn from_json(text: &str) -> Result<CodeSpec> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn x_tuple(&self) -> Result<SubsetTuple> {
        SubsetTuple::from_lists(self.m, &self.x)
    }

    pub fn z_tuple(&self) -> Result<SubsetTuple> {
        SubsetTuple::from_lists(self.m, &self.z)
    }

    /// Raw component matrices; orthogonality is not checked here.
    pub fn component_matrices(&self) -> Result<Vec<(BitMatrix, BitMatrix)>> {
        match &self.components {
            None => {
                let h = BitMatrix::from_rows(2, &[[1u8, 1]])?;
                Ok(vec![(h.clone(), h); self.m])
            }
            Some(cs) => {
                if cs.len() != self.m {
                    return Err(Error::ComponentCount {
                        expected: self.m,
                        found: cs.len(),
                    });
                }
                cs.iter()
                    .enumerate()
                    .map(|(i, c)| Ok((matrix(&c.hx, &format!("hx[{i}]"))?, matrix(&c.hz, &format!("hz[{i}]"))?)))
                    .collect()
            }
        }
    }

    pub fn components(&self) -> Result<Vec<ComponentPair>> {
        self.component_matrices()?
            .into_iter()
            .enumerate()
            .map(|(i, (hx, hz))| {
                ComponentPair::new(hx, hz).map_err(|e| match e {
                    Error::NotOrthogonal { .. } => Error::NotOrthogonal { component: Some(i) },
                    e => e,
                })
            })
            .collect()
    }

    pub fn build(&self) -> Result<CssCode> {
        build_css(self.components()?, self.x_tuple()?, self.z_tuple()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_to_repetition_components() {
        let spec = CodeSpec::from_json(r#"{"m": 4, "x": [[0,1],[2,3]], "z": [[0,2],[1,3]]}"#).unwrap();
        let code = spec.build().unwrap();
        assert_eq!((code.n(), code.k()), (16, 2));
        assert_eq!(CodeSpec::from_json(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn explicit_components() {
        let text = r#"{"m": 1, "x": [[0]], "z": [[0]],
            "components": [{"hx": [[1,1,1,1]], "hz": [[1,1,0,0],[0,0,1,1]]}]}"#;
        let code = CodeSpec::from_json(text).unwrap().build().unwrap();
        assert_eq!((code.n(), code.k()), (4, 1));
    }

    #[test]
    fn component_count_checked() {
        let text = r#"{"m": 2, "x": [[0]], "z": [[0]], "components": [{"hx": [[1,1]], "hz": [[1,1]]}]}"#;
        assert!(matches!(CodeSpec::from_json(text).unwrap().build(), Err(Error::ComponentCount { .. })));
    }

    #[test]
    fn non_orthogonal_component_named() {
        let text = r#"{"m": 1, "x": [[0]], "z": [[0]], "components": [{"hx": [[1,0]], "hz": [[1,1]]}]}"#;
        let err = CodeSpec::from_json(text).unwrap().build().unwrap_err();
        assert!(matches!(err, Error::NotOrthogonal { component: Some(0) }));
    }
}
