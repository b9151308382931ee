use crate::algebra::ExactMatrix;
use crate::elemset::ElemSet;

/// Matroid on the columns of an exact matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMatroid {
    matrix: ExactMatrix,
}

impl LinearMatroid {
    pub fn new(matrix: ExactMatrix) -> Self {
        LinearMatroid { matrix }
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank(&self, set: ElemSet) -> usize {
        if set.is_empty() {
            return 0;
        }
        self.matrix.column_rank(&set.to_vec())
    }
}
