use std::fmt;

use super::HomologyError;

/// One crossing of a PD code.
///
/// `edges` lists the four incident edge labels counterclockwise, starting
/// from the incoming under-edge; `edges[2]` is the outgoing under-edge.
/// On a positive crossing the over-strand runs from `edges[3]` to
/// `edges[1]`; on a negative one from `edges[1]` to `edges[3]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edges: [usize; 4],
    pub positive: bool,
}

impl Crossing {
    pub fn sign(&self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    /// (incoming, outgoing) slots of the over-strand.
    fn over_slots(&self) -> (usize, usize) {
        if self.positive {
            (3, 1)
        } else {
            (1, 3)
        }
    }

    /// Same crossing with the over and under strands exchanged.
    pub fn mirrored(&self) -> Crossing {
        let [a, b, c, d] = self.edges;
        if self.positive {
            Crossing { edges: [d, a, b, c], positive: false }
        } else {
            Crossing { edges: [b, c, d, a], positive: true }
        }
    }
}

/// An oriented link diagram as a crossing list.
///
/// Edge labels are `1..=2·crossings`. Components with no crossing at all
/// are kept as a count of free loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    components: usize,
    /// traced component of each edge, indexed by `label - 1`
    edge_component: Vec<usize>,
    traced: usize,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl PlanarDiagram {
    /// Validates labels and orientations; `components` counts free loops too.
    pub fn new(crossings: Vec<Crossing>, components: usize) -> Result<Self, HomologyError> {
        let e = 2 * crossings.len();
        let mut seen_in = vec![0u8; e];
        let mut seen_out = vec![0u8; e];
        for (k, c) in crossings.iter().enumerate() {
            let (over_in, over_out) = c.over_slots();
            for (slot, &label) in c.edges.iter().enumerate() {
                if label == 0 || label > e {
                    return Err(HomologyError::Diagram(format!(
                        "crossing {}: label {label} outside 1..={e}",
                        k + 1
                    )));
                }
                let incoming = slot == 0 || slot == over_in;
                debug_assert!(incoming || slot == 2 || slot == over_out);
                if incoming {
                    seen_in[label - 1] += 1;
                } else {
                    seen_out[label - 1] += 1;
                }
            }
        }
        for l in 0..e {
            if seen_in[l] != 1 || seen_out[l] != 1 {
                return Err(HomologyError::Diagram(format!(
                    "edge {} must enter one crossing and leave one (in {}, out {})",
                    l + 1,
                    seen_in[l],
                    seen_out[l]
                )));
            }
        }
        let mut dsu = Dsu::new(e);
        for c in &crossings {
            let [a, b, cc, d] = c.edges;
            dsu.union(a - 1, cc - 1);
            dsu.union(b - 1, d - 1);
        }
        let mut root_id = vec![usize::MAX; e];
        let mut edge_component = vec![0; e];
        let mut traced = 0;
        for l in 0..e {
            let r = dsu.find(l);
            if root_id[r] == usize::MAX {
                root_id[r] = traced;
                traced += 1;
            }
            edge_component[l] = root_id[r];
        }
        if components < traced.max(1) {
            return Err(HomologyError::Diagram(format!(
                "diagram traces {traced} components but declares {components}"
            )));
        }
        Ok(PlanarDiagram { crossings, components, edge_component, traced })
    }

    /// Crossingless diagram of the `c`-component unlink.
    pub fn unlink(c: usize) -> Self {
        PlanarDiagram::new(Vec::new(), c.max(1)).expect("unlink")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|c| c.positive).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossings.len() - self.n_plus()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// Components passing through at least one crossing.
    pub fn traced_components(&self) -> usize {
        self.traced
    }

    pub fn free_loops(&self) -> usize {
        self.components - self.traced
    }

    /// Traced component of an edge label.
    pub fn component_of(&self, label: usize) -> usize {
        self.edge_component[label - 1]
    }

    /// Half the signed count of crossings between two traced components.
    pub fn linking_number(&self, i: usize, j: usize) -> i64 {
        if i == j {
            return 0;
        }
        let mut twice = 0;
        for c in &self.crossings {
            let under = self.component_of(c.edges[0]);
            let over = self.component_of(c.edges[1]);
            if (under == i && over == j) || (under == j && over == i) {
                twice += c.sign();
            }
        }
        twice / 2
    }

    /// Sum of signs of crossings where a component crosses itself.
    pub fn self_writhe(&self, i: usize) -> i64 {
        self.crossings
            .iter()
            .filter(|c| self.component_of(c.edges[0]) == i && self.component_of(c.edges[1]) == i)
            .map(Crossing::sign)
            .sum()
    }

    pub fn mirror(&self) -> PlanarDiagram {
        PlanarDiagram {
            crossings: self.crossings.iter().map(Crossing::mirrored).collect(),
            components: self.components,
            edge_component: self.edge_component.clone(),
            traced: self.traced,
        }
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PD[")?;
        for (k, c) in self.crossings.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            let [a, b, cc, d] = c.edges;
            write!(f, "X{}[{a},{b},{cc},{d}]", if c.positive { "+" } else { "-" })?;
        }
        write!(f, "] ({} components)", self.components)
    }
}
