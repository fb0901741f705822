//! Published recurrence tables, stored as polynomials in κ (ascending
//! coefficients) and used as fixtures.

/// Recurrence matrix of the weave construction on τ₄, entry by entry.
pub(crate) const WEAVE_TABLE: [[&[i64]; 9]; 9] = [
    [
        &[9,-18,8,1],
        &[-36,84,-60,12],
        &[-9,15,-7,1],
        &[36,-78,58,-18,2],
        &[-9,15,-7,1],
        &[36,-78,58,-18,2],
        &[-9,27,-26,8],
        &[36,-102,102,-42,6],
        &[-54,135,-126,56,-12,1],
    ],
    [
        &[9,-12,3],
        &[-36,60,-28,3],
        &[-9,9,-2],
        &[36,-54,26,-4],
        &[-9,9,-2],
        &[36,-54,26,-4],
        &[-9,21,-15,3],
        &[36,-78,58,-16,1],
        &[-54,99,-66,19,-2],
    ],
    [
        &[9,-18,8],
        &[-36,84,-60,12],
        &[-9,15,-7,1],
        &[36,-78,58,-18,2],
        &[-9,15,-7,1],
        &[36,-78,58,-18,2],
        &[-9,27,-26,9],
        &[36,-102,102,-42,6],
        &[-54,135,-126,56,-12,1],
    ],
    [
        &[9,-12,3],
        &[-36,60,-28,2],
        &[-9,9,-2],
        &[36,-54,26,-4],
        &[-9,9,-2],
        &[36,-54,26,-4],
        &[-9,21,-15,3],
        &[36,-78,58,-15,1],
        &[-54,99,-66,19,-2],
    ],
    [
        &[9,-6,1],
        &[-36,36,-8],
        &[-9,3],
        &[36,-30,6],
        &[-9,3,0,1],
        &[36,-30,6],
        &[-9,15,-7,1],
        &[36,-54,26,-4],
        &[-54,63,-24,3],
    ],
    [
        &[9,-6,1],
        &[-36,36,-8],
        &[-9,3],
        &[36,-30,6],
        &[-9,3],
        &[36,-30,6,1],
        &[-9,15,-7,1],
        &[36,-54,26,-4],
        &[-54,63,-24,3],
    ],
    [
        &[9,-6,1],
        &[-36,36,-8],
        &[-9,3,0,1],
        &[36,-30,6],
        &[-9,3],
        &[36,-30,6],
        &[-9,15,-7,1],
        &[36,-54,26,-4],
        &[-54,63,-24,3],
    ],
    [
        &[9,-6,1],
        &[-36,36,-8],
        &[-9,3],
        &[36,-30,6,1],
        &[-9,3],
        &[36,-30,6],
        &[-9,15,-7,1],
        &[36,-54,26,-4],
        &[-54,63,-24,3],
    ],
    [
        &[9,-6,1],
        &[-36,36,-8],
        &[-9,3],
        &[36,-30,6],
        &[-9,3],
        &[36,-30,6],
        &[-9,15,-7,1],
        &[36,-54,26,-4],
        &[-54,63,-24,4],
    ],
];
