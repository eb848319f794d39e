use super::{load_arrangement, Arrangement, ArrangementError, ArrangementSpec};

const NAMES: [&str; 3] = ["ceva2", "ceva3", "triangle"];

pub fn builtin_names() -> &'static [&'static str] {
    &NAMES
}

fn lines(rows: &[[&str; 3]]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect())
        .collect()
}

/// Input documents for the shipped arrangements.
///
/// * `ceva3`: the 9 lines of `(x³−y³)(x³−z³)(y³−z³)` over `Q(ζ₃)`.
/// * `ceva2`: the 6 lines `x±y, x±z, y±z` over `Q`.
/// * `triangle`: the coordinate lines `xyz`.
pub fn builtin_spec(name: &str) -> Option<ArrangementSpec> {
    let spec = match name {
        "ceva3" => {
            let mut rows = Vec::new();
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                for root in ["-1", "-z", "-z^2"] {
                    let mut row = ["0"; 3];
                    row[i] = "1";
                    row[j] = root;
                    rows.push(row);
                }
            }
            ArrangementSpec {
                cyclotomic_order: 3,
                lines: lines(&rows),
            }
        }
        "ceva2" => ArrangementSpec {
            cyclotomic_order: 1,
            lines: lines(&[
                ["1", "-1", "0"],
                ["1", "1", "0"],
                ["1", "0", "-1"],
                ["1", "0", "1"],
                ["0", "1", "-1"],
                ["0", "1", "1"],
            ]),
        },
        "triangle" => ArrangementSpec {
            cyclotomic_order: 1,
            lines: lines(&[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]),
        },
        _ => return None,
    };
    Some(spec)
}

pub fn builtin(name: &str) -> Result<Arrangement, ArrangementError> {
    let spec = builtin_spec(name).ok_or_else(|| ArrangementError::UnknownBuiltin(name.into()))?;
    load_arrangement(&spec)
}
