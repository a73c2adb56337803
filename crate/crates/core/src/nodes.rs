use alloc::vec::Vec;
use core::ops::Deref;

use crate::{Error, Result};

/// Interpolation nodes `0 < x_1 < x_2 < ... < x_{n+1} < 1` for degree `n`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NodeSet {
    nodes: Vec<f64>,
}

impl NodeSet {
    /// Accepts `raw` iff it is non-empty, every entry lies in (0, 1) and the
    /// entries strictly increase.
    pub fn new(raw: Vec<f64>) -> Result<NodeSet> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (index, &value) in raw.iter().enumerate() {
            // NaN fails both comparisons and lands here too.
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::NodeOutOfRange { index, value });
            }
        }
        if let Some(index) = raw.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NodesNotStrictlyIncreasing { index });
        }
        Ok(NodeSet { nodes: raw })
    }

    pub fn from_slice(raw: &[f64]) -> Result<NodeSet> {
        NodeSet::new(raw.to_vec())
    }

    /// Equispaced nodes `x_i = i / (n + 2)`, `i = 1..=n+1`.
    pub fn equispaced(degree: usize) -> NodeSet {
        let d = (degree + 2) as f64;
        NodeSet {
            nodes: (1..=degree + 1).map(|i| i as f64 / d).collect(),
        }
    }

    /// Polynomial degree `n`; the matrix order is `n + 1`.
    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.nodes
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.nodes
    }
}

impl Deref for NodeSet {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.nodes
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn accepts_valid_nodes() {
        let s = NodeSet::new(vec![0.25, 0.75]).unwrap();
        assert_eq!(s.degree(), 1);
        let twelfths: Vec<f64> = (1..=11).map(|i| i as f64 / 12.0).collect();
        assert_eq!(NodeSet::new(twelfths).unwrap().degree(), 10);
        assert_eq!(NodeSet::new(vec![0.5]).unwrap().degree(), 0);
    }

    #[test]
    fn rejects_ties_and_range_violations() {
        assert_eq!(
            NodeSet::new(vec![0.5, 0.5]),
            Err(Error::NodesNotStrictlyIncreasing { index: 0 })
        );
        assert_eq!(
            NodeSet::new(vec![0.2, 0.1]),
            Err(Error::NodesNotStrictlyIncreasing { index: 0 })
        );
        assert_eq!(NodeSet::new(vec![]), Err(Error::EmptyInput));
        assert!(matches!(
            NodeSet::new(vec![0.0, 0.5]),
            Err(Error::NodeOutOfRange { index: 0, .. })
        ));
        assert!(matches!(
            NodeSet::new(vec![0.5, 1.0]),
            Err(Error::NodeOutOfRange { index: 1, .. })
        ));
        assert!(matches!(
            NodeSet::new(vec![0.5, f64::NAN]),
            Err(Error::NodeOutOfRange { index: 1, .. })
        ));
    }

    #[test]
    fn equispaced_matches_definition() {
        let s = NodeSet::equispaced(10);
        assert_eq!(s.order(), 11);
        assert_eq!(s[0], 1.0 / 12.0);
        assert_eq!(s[10], 11.0 / 12.0);
    }

    proptest! {
        #[test]
        fn validation_is_idempotent(mut raw in proptest::collection::vec(0.0f64..1.0, 1..20)) {
            raw.sort_by(|a, b| a.partial_cmp(b).unwrap());
            if let Ok(set) = NodeSet::new(raw) {
                let again = NodeSet::from_slice(set.as_slice()).unwrap();
                prop_assert_eq!(again, set);
            }
        }
    }
}
