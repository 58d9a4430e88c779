//! Lattice descriptions: triangles with three legs each, singlet edges
//! between legs, and Posners pairing two triangles.
//!
//! Triangle at list position `t` owns qubits `3t, 3t+1, 3t+2` (legs 0, 1, 2).
//! The two triangles of a Posner are joined through leg 2 of each. Legs not
//! on any edge are boundary legs; each is closed by a singlet with a stub
//! qubit, numbered after the leg qubits in boundary order, which is traced
//! out to leave the leg maximally mixed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Label;

pub type Leg = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    /// Triangle identifiers; edges and Posners refer to these.
    pub triangles: Vec<usize>,
    /// Singlet links `[[t, i], [t′, i′]]` between legs.
    pub edges: Vec<[Leg; 2]>,
    /// Pairs `[t, t′]`; `t` carries `T⁺` and `t′` carries `T⁻`.
    pub posners: Vec<[usize; 2]>,
}

/// A validated lattice with every identifier resolved to qubit labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    /// Edges as `(first, second)` leg positions, by triangle index.
    pub edges: Vec<(Leg, Leg)>,
    /// Posners as triangle-index pairs.
    pub posners: Vec<(usize, usize)>,
    /// Boundary legs with the stub label closing each.
    pub boundary: Vec<(Leg, Label)>,
    pub n_triangles: usize,
}

impl Layout {
    pub fn leg_label(leg: Leg) -> Label {
        3 * leg.0 + leg.1
    }

    /// Leg qubits `0..3T`.
    pub fn physical(&self) -> Vec<Label> {
        (0..3 * self.n_triangles).collect()
    }

    pub fn stubs(&self) -> Vec<Label> {
        self.boundary.iter().map(|(_, s)| *s).collect()
    }

    pub fn n_qubits(&self) -> usize {
        3 * self.n_triangles + self.boundary.len()
    }

    /// Register labels of Posner `k`: the `T⁺` triangle then the `T⁻` one.
    pub fn register(&self, k: usize) -> [Label; 6] {
        let (t, u) = self.posners[k];
        [3 * t, 3 * t + 1, 3 * t + 2, 3 * u, 3 * u + 1, 3 * u + 2]
    }

    pub fn is_internal(&self, edge: &(Leg, Leg)) -> bool {
        let (a, b) = edge;
        a.1 == 2 && b.1 == 2 && self.posners.iter().any(|&(t, u)| (t, u) == (a.0, b.0) || (u, t) == (a.0, b.0))
    }

    /// Singlet pairs of the initial state: every edge, then every stub.
    pub fn singlet_pairs(&self) -> Vec<(Label, Label)> {
        self.edges
            .iter()
            .map(|&(a, b)| (Self::leg_label(a), Self::leg_label(b)))
            .chain(self.boundary.iter().map(|&(leg, s)| (Self::leg_label(leg), s)))
            .collect()
    }
}

impl Lattice {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Serialization(format!("lattice: {e}")))
    }

    /// One Posner: two triangles joined by their internal singlet, four
    /// boundary legs.
    pub fn single_posner() -> Self {
        Self { triangles: vec![0, 1], edges: vec![[(0, 2), (1, 2)]], posners: vec![[0, 1]] }
    }

    /// Two Posners joined by one singlet; six boundary legs.
    pub fn posner_pair() -> Self {
        Self {
            triangles: vec![0, 1, 2, 3],
            edges: vec![[(0, 2), (1, 2)], [(2, 2), (3, 2)], [(1, 0), (2, 0)]],
            posners: vec![[0, 1], [2, 3]],
        }
    }

    /// Three Posners on a closed ring, each neighbouring pair joined by two
    /// singlets; no boundary legs.
    pub fn posner_ring() -> Self {
        Self {
            triangles: vec![0, 1, 2, 3, 4, 5],
            edges: vec![
                [(0, 2), (1, 2)],
                [(2, 2), (3, 2)],
                [(4, 2), (5, 2)],
                [(1, 0), (2, 0)],
                [(1, 1), (2, 1)],
                [(3, 0), (4, 0)],
                [(3, 1), (4, 1)],
                [(5, 0), (0, 0)],
                [(5, 1), (0, 1)],
            ],
            posners: vec![[0, 1], [2, 3], [4, 5]],
        }
    }

    pub fn layout(&self) -> Result<Layout> {
        let n = self.triangles.len();
        let index = |id: usize| -> Result<usize> {
            self.triangles.iter().position(|&t| t == id).ok_or_else(|| Error::Lattice(format!("unknown triangle {id}")))
        };
        for (k, id) in self.triangles.iter().enumerate() {
            if self.triangles[..k].contains(id) {
                return Err(Error::Lattice(format!("triangle {id} listed twice")));
            }
        }
        let mut used = vec![[false; 3]; n];
        let mut edges = Vec::with_capacity(self.edges.len());
        for [a, b] in &self.edges {
            let a = (index(a.0)?, a.1);
            let b = (index(b.0)?, b.1);
            for leg in [a, b] {
                if leg.1 > 2 {
                    return Err(Error::Lattice(format!("leg {} out of range (triangles have legs 0, 1, 2)", leg.1)));
                }
                if std::mem::replace(&mut used[leg.0][leg.1], true) {
                    return Err(Error::Lattice(format!("leg {leg:?} is on two edges")));
                }
            }
            edges.push((a, b));
        }
        let mut in_posner = vec![false; n];
        let mut posners = Vec::with_capacity(self.posners.len());
        for [t, u] in &self.posners {
            let (t, u) = (index(*t)?, index(*u)?);
            for x in [t, u] {
                if std::mem::replace(&mut in_posner[x], true) {
                    return Err(Error::Lattice(format!("triangle {} is in two Posners", self.triangles[x])));
                }
            }
            posners.push((t, u));
        }
        if let Some(x) = in_posner.iter().position(|p| !p) {
            return Err(Error::Lattice(format!("triangle {} is in no Posner", self.triangles[x])));
        }
        let mut boundary = Vec::new();
        for (t, legs) in used.iter().enumerate() {
            for (i, &u) in legs.iter().enumerate() {
                if !u {
                    boundary.push(((t, i), 3 * n + boundary.len()));
                }
            }
        }
        let layout = Layout { edges, posners, boundary, n_triangles: n };
        for &(t, u) in &layout.posners {
            let joined = layout.edges.iter().any(|e| layout.is_internal(e) && (e.0 .0 == t || e.1 .0 == t) && (e.0 .0 == u || e.1 .0 == u));
            if !joined {
                return Err(Error::Lattice(format!(
                    "Posner ({}, {}) needs an edge between leg 2 of each triangle",
                    self.triangles[t], self.triangles[u]
                )));
            }
        }
        Ok(layout)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        assert_eq!(Lattice::single_posner().layout().unwrap().n_qubits(), 10);
        assert_eq!(Lattice::posner_pair().layout().unwrap().n_qubits(), 18);
        let ring = Lattice::posner_ring().layout().unwrap();
        assert_eq!(ring.n_qubits(), 18);
        assert!(ring.boundary.is_empty());
    }

    #[test]
    fn json_round_trip() {
        let l = Lattice::posner_pair();
        let text = serde_json::to_string(&l).unwrap();
        assert!(text.starts_with(r#"{"triangles":[0,1,2,3],"edges":[[[0,2],[1,2]]"#));
        assert_eq!(Lattice::from_json_str(&text).unwrap(), l);
    }

    #[test]
    fn malformed_lattices_are_rejected() {
        let mut l = Lattice::single_posner();
        l.edges.push([(0, 2), (1, 0)]);
        assert!(matches!(l.layout(), Err(Error::Lattice(_))));
        let mut l = Lattice::single_posner();
        l.edges = vec![[(0, 1), (1, 1)]];
        assert!(l.layout().is_err());
        let mut l = Lattice::single_posner();
        l.posners.clear();
        assert!(l.layout().is_err());
    }
}
