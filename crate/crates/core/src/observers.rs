//! Personal basis frames related by rotation angles.
//!
//! Each observer describes beliefs in their own answer basis. Two frames are
//! related by the angle that rotates one basis onto the other. Angles live on
//! a spanning forest: the first relation between two components adds a tree
//! edge, and any later relation inside a component must agree with the path
//! already there. Every derived angle is a path sum, so composition holds by
//! construction.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{ensure_finite, Error, Result};
use crate::projection::{canonical_angle, rotation_matrix, BeliefState};
use crate::search::circular_distance;

const CONSISTENCY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FrameRegistry {
    // Tree edges, stored in both directions with opposite angles.
    edges: BTreeMap<String, Vec<(String, f64)>>,
}

impl FrameRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_frame(&mut self, label: impl Into<String>) {
        self.edges.entry(label.into()).or_default();
    }

    pub fn contains(&self, label: &str) -> bool {
        self.edges.contains_key(label)
    }

    pub fn frames(&self) -> impl Iterator<Item = &str> {
        self.edges.keys().map(String::as_str)
    }

    /// Records `angle(from, to) = phi`, registering unknown frames.
    ///
    /// If the frames are already connected, `phi` must match the derived
    /// angle modulo `2pi`, otherwise the call fails and the registry is left
    /// unchanged.
    pub fn relate(&mut self, from: &str, to: &str, phi: f64) -> Result<()> {
        ensure_finite("phi", phi)?;
        if from == to {
            return Err(Error::SameFrame(from.to_string()));
        }
        if let Some(path) = self.path(from, to) {
            let existing = path_angle(&path);
            if circular_distance(existing, phi) > CONSISTENCY_TOL {
                let via = if path.len() > 1 {
                    path[0].0.clone()
                } else {
                    // A direct edge already exists; the triangle degenerates.
                    to.to_string()
                };
                return Err(Error::FrameConflict {
                    from: from.to_string(),
                    to: to.to_string(),
                    via,
                    existing: canonical_angle(existing),
                    requested: canonical_angle(phi),
                });
            }
            return Ok(());
        }
        let phi = canonical_angle(phi);
        self.edges
            .entry(from.to_string())
            .or_default()
            .push((to.to_string(), phi));
        self.edges
            .entry(to.to_string())
            .or_default()
            .push((from.to_string(), canonical_angle(-phi)));
        Ok(())
    }

    /// Derived `angle(from, to)` in `[0, 2pi)`.
    pub fn angle(&self, from: &str, to: &str) -> Result<f64> {
        for label in [from, to] {
            if !self.contains(label) {
                return Err(Error::UnknownFrame(label.to_string()));
            }
        }
        if from == to {
            return Ok(0.0);
        }
        self.path(from, to)
            .map(|p| canonical_angle(path_angle(&p)))
            .ok_or_else(|| Error::UnknownRelation {
                from: from.to_string(),
                to: to.to_string(),
            })
    }

    /// Re-expresses `state` from frame `from` in frame `to` by applying
    /// `R(angle(from, to))` to its amplitudes.
    pub fn translate_state(
        &self,
        state: &BeliefState,
        from: &str,
        to: &str,
    ) -> Result<BeliefState> {
        let phi = self.angle(from, to)?;
        Ok(state.transformed(&rotation_matrix(phi)?))
    }

    /// Like [`translate_state`](Self::translate_state), but applies each
    /// rotation along the tree path in turn.
    pub fn translate_along_path(
        &self,
        state: &BeliefState,
        from: &str,
        to: &str,
    ) -> Result<BeliefState> {
        self.angle(from, to)?;
        let mut out = *state;
        for (_, phi) in self.path(from, to).unwrap_or_default() {
            out = out.transformed(&rotation_matrix(phi)?);
        }
        Ok(out)
    }

    // Tree path from `from` to `to` as (next frame, edge angle) hops.
    fn path(&self, from: &str, to: &str) -> Option<Vec<(String, f64)>> {
        if !self.contains(from) || !self.contains(to) {
            return None;
        }
        let mut parent: BTreeMap<&str, (&str, f64)> = BTreeMap::new();
        let mut queue = VecDeque::from([from]);
        while let Some(node) = queue.pop_front() {
            if node == to {
                break;
            }
            for (next, phi) in &self.edges[node] {
                if next != from && !parent.contains_key(next.as_str()) {
                    parent.insert(next, (node, *phi));
                    queue.push_back(next);
                }
            }
        }
        let mut hops = Vec::new();
        let mut cur = to;
        while cur != from {
            let (prev, phi) = parent.get(cur)?;
            hops.push((cur.to_string(), *phi));
            cur = prev;
        }
        hops.reverse();
        Some(hops)
    }
}

fn path_angle(path: &[(String, f64)]) -> f64 {
    path.iter().map(|(_, phi)| phi).sum()
}
