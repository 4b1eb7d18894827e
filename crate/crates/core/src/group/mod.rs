//! Free groups, tangle presentations and branched-cover monodromy.

mod longitude;
mod monodromy;
mod table;
mod wirtinger;
mod word;

pub use longitude::{expand_shifted, longitude_normal_form, shift_word, Shifted};
pub use monodromy::{check_monodromy, lift_path, MonodromyAssignment, Perm};
pub use table::{
    boundary_relation_orders, half_twist_relations, local_model, longitude_conjugates, relation_table, solve_row,
    LocalModel, RelationRow, LOOP_NAMES, TABLE_EXPONENTS,
};
pub use wirtinger::{
    rewrite_relation, verify_relation_trivial, wirtinger, Endpoint, TangleCrossing, TangleDiagram, TanglePresentation,
    WirtingerRule,
};
pub use word::{word_ops, FreeWord, Letter, WordOp};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("cannot parse word token {0:?}")]
    Parse(String),
    #[error("no half-twist row for k = {0}; expected one of -2, 1, 2, 3")]
    NoTableRow(i32),
    #[error("inconsistent tangle: {0}")]
    Inconsistent(String),
    #[error("generator {0} has no expression in the presentation")]
    Unexpressible(String),
    #[error("rewriting does not terminate: arc {0} depends on itself")]
    Cyclic(String),
    #[error("sheet {sheet} outside 1..={degree}")]
    Sheet { sheet: usize, degree: usize },
    #[error("bad permutation: {0}")]
    Permutation(String),
    #[error("generator {0} has no monodromy image")]
    MissingImage(String),
}
