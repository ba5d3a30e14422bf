//! Published error tables for the uniform alternating 3/4 setup on `[0, 1]`.
//!
//! These constants are transcribed, not computed. The comparison columns
//! belong to other quasi-interpolation schemes that this crate does not
//! implement.

use split_spline::QiKind;

use crate::functions::TestFunction;

pub const TRANSCRIBED_LABEL: &str = "published value, transcribed, not computed";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceRow {
    pub n: usize,
    pub error: f64,
    pub nco: Option<f64>,
}

const fn row(n: usize, error: f64, nco: Option<f64>) -> ReferenceRow {
    ReferenceRow { n, error, nco }
}

/// Errors of another published scheme on the same test function, aligned with
/// the rows of the owning table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonColumn {
    pub label: &'static str,
    pub rows: &'static [ReferenceRow],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceTable {
    pub id: &'static str,
    pub kind: QiKind,
    pub function: TestFunction,
    pub rows: &'static [ReferenceRow],
    pub comparisons: &'static [ComparisonColumn],
}

impl ReferenceTable {
    pub fn n_values(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.n).collect()
    }
}

pub const TABLES: &[ReferenceTable] = &[
    ReferenceTable {
        id: "differential-f1",
        kind: QiKind::Differential,
        function: TestFunction::F1,
        rows: &[
            row(16, 1.4305e-3, None),
            row(32, 6.11325e-5, Some(4.54843)),
            row(64, 6.48491e-6, Some(3.23678)),
            row(128, 3.66472e-7, Some(4.14531)),
            row(256, 2.48645e-8, Some(3.88154)),
        ],
        comparisons: &[],
    },
    ReferenceTable {
        id: "differential-f2",
        kind: QiKind::Differential,
        function: TestFunction::F2,
        rows: &[
            row(16, 1.84729e-3, None),
            row(32, 1.46037e-4, Some(3.661)),
            row(64, 8.3046e-6, Some(4.13628)),
            row(128, 5.02361e-7, Some(4.04712)),
            row(256, 2.79162e-8, Some(4.16955)),
        ],
        comparisons: &[],
    },
    ReferenceTable {
        id: "differential-f3",
        kind: QiKind::Differential,
        function: TestFunction::F3,
        rows: &[
            row(16, 1.78188e-6, None),
            row(32, 1.05981e-7, Some(4.07153)),
            row(64, 7.00157e-9, Some(3.91998)),
            row(128, 4.26038e-10, Some(4.03862)),
            row(256, 2.73356e-11, Some(3.96213)),
        ],
        comparisons: &[],
    },
    ReferenceTable {
        id: "polarization-f1",
        kind: QiKind::Polarization,
        function: TestFunction::F1,
        rows: &[
            row(16, 6.25902e-4, None),
            row(32, 3.10344e-5, Some(4.334)),
            row(64, 2.42724e-6, Some(3.67648)),
            row(128, 1.76285e-7, Some(3.78334)),
            row(256, 9.5628e-9, Some(4.20433)),
        ],
        comparisons: &[ComparisonColumn {
            label: "comparison A",
            rows: &[
                row(16, 3.2851e-3, None),
                row(32, 3.8209e-4, Some(3.10)),
                row(64, 2.1478e-5, Some(4.15)),
                row(128, 9.9300e-7, Some(4.43)),
                row(256, 7.5323e-8, Some(3.72)),
            ],
        }],
    },
    ReferenceTable {
        id: "polarization-f2",
        kind: QiKind::Polarization,
        function: TestFunction::F2,
        rows: &[
            row(16, 7.09872e-4, None),
            row(32, 5.58036e-5, Some(3.66913)),
            row(64, 3.8982e-6, Some(3.83948)),
            row(128, 1.83669e-7, Some(4.40763)),
            row(256, 1.29283e-8, Some(3.8285)),
        ],
        comparisons: &[ComparisonColumn {
            label: "comparison A",
            rows: &[
                row(16, 8.3227e-3, None),
                row(32, 5.1442e-4, Some(4.01)),
                row(64, 2.9507e-5, Some(4.12)),
                row(128, 1.8595e-6, Some(3.98)),
                row(256, 1.1592e-7, Some(4.00)),
            ],
        }],
    },
    ReferenceTable {
        id: "polarization-g1",
        kind: QiKind::Polarization,
        function: TestFunction::G1,
        rows: &[
            row(16, 1.85742e-9, None),
            row(32, 1.16097e-10, Some(3.99989)),
            row(64, 7.25608e-12, Some(4.00)),
            row(128, 4.53415e-13, Some(4.00029)),
        ],
        comparisons: &[
            ComparisonColumn {
                label: "comparison B",
                rows: &[
                    row(16, 2.1352e-8, None),
                    row(32, 1.3627e-9, Some(3.96)),
                    row(64, 8.6021e-11, Some(3.98)),
                    row(128, 5.4025e-12, Some(3.99)),
                ],
            },
            ComparisonColumn {
                label: "comparison C",
                rows: &[
                    row(16, 3.25116e-7, None),
                    row(32, 2.13504e-8, Some(3.92862)),
                    row(64, 1.36452e-9, Some(3.96779)),
                    row(128, 8.61907e-11, Some(3.98472)),
                ],
            },
        ],
    },
    ReferenceTable {
        id: "polarization-g2",
        kind: QiKind::Polarization,
        function: TestFunction::G2,
        rows: &[
            row(64, 1.80915e-8, None),
            row(128, 1.1413e-9, Some(3.98656)),
            row(256, 7.13407e-11, Some(3.99981)),
            row(512, 4.46058e-12, Some(3.99942)),
        ],
        comparisons: &[
            ComparisonColumn {
                label: "comparison B",
                rows: &[
                    row(64, 2.1282e-7, None),
                    row(128, 1.3140e-8, Some(4.01)),
                    row(256, 7.3024e-10, Some(4.16)),
                    row(512, 5.2902e-11, Some(3.78)),
                ],
            },
            ComparisonColumn {
                label: "comparison C",
                rows: &[
                    row(64, 4.11124e-6, None),
                    row(128, 2.59629e-7, Some(3.98505)),
                    row(256, 1.62327e-8, Some(3.99948)),
                    row(512, 1.01501e-9, Some(3.99934)),
                ],
            },
        ],
    },
    ReferenceTable {
        id: "polarization-g3",
        kind: QiKind::Polarization,
        function: TestFunction::G3,
        rows: &[
            row(16, 2.71919e-7, None),
            row(32, 1.69909e-8, Some(4.00034)),
            row(64, 1.06187e-9, Some(4.00008)),
            row(128, 6.6366e-11, Some(4.00002)),
        ],
        comparisons: &[ComparisonColumn {
            label: "comparison D",
            rows: &[
                row(16, 3.2526e-7, None),
                row(32, 2.2001e-8, Some(3.88593)),
                row(64, 1.4290e-9, Some(3.94444)),
                row(128, 9.1028e-11, Some(3.97262)),
            ],
        }],
    },
];

pub fn lookup(kind: QiKind, function: TestFunction) -> Option<&'static ReferenceTable> {
    TABLES.iter().find(|t| t.kind == kind && t.function == function)
}

pub fn by_id(id: &str) -> Option<&'static ReferenceTable> {
    TABLES.iter().find(|t| t.id == id)
}

/// Published data counts for the alternating 3/4 setup, when one exists.
pub fn published_data_count(kind: QiKind, n: usize) -> Option<usize> {
    match kind {
        QiKind::Differential if n.is_multiple_of(2) => Some(7 * n / 2),
        QiKind::Polarization => Some(9 * n - 1),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::nco;

    #[test]
    fn lookups() {
        assert_eq!(lookup(QiKind::Polarization, TestFunction::G2).unwrap().id, "polarization-g2");
        assert!(lookup(QiKind::PointValue, TestFunction::G3).is_none());
        assert_eq!(by_id("differential-f3").unwrap().n_values(), vec![16, 32, 64, 128, 256]);
        assert_eq!(published_data_count(QiKind::Differential, 16), Some(56));
        assert_eq!(published_data_count(QiKind::Polarization, 16), Some(143));
    }

    #[test]
    fn transcribed_orders_match_transcribed_errors() {
        for table in TABLES {
            let columns = std::iter::once(table.rows).chain(table.comparisons.iter().map(|c| c.rows));
            for rows in columns {
                assert_eq!(rows.len(), table.rows.len(), "{}", table.id);
                assert!(rows[0].nco.is_none());
                for w in rows.windows(2) {
                    let order = nco(w[0].error, w[0].n, w[1].error, w[1].n).unwrap();
                    assert!((order - w[1].nco.unwrap()).abs() < 0.02, "{} n={}: {order}", table.id, w[1].n);
                }
            }
        }
    }
}
