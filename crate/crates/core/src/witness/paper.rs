//! The 9-vertex graph left by the automated tests and its hand-made witness.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{WitnessCertificate, WitnessMethod};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, WeightedGraph};
use crate::hom::hom_count;

/// The 3×3 rook's graph: vertex `3r + c`, adjacent when sharing a row or
/// a column.
pub fn paper_g1() -> SimpleGraph {
    let mut g = SimpleGraph::empty(9).expect("9 vertices");
    for u in 0..9 {
        for v in u + 1..9 {
            if u / 3 == v / 3 || u % 3 == v % 3 {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Three rows of five vertices (`5r + c`): each row a 5-cycle, each column a
/// triangle, and the edge between rows 2 and 0 in column 2 weighted −1.
pub fn build_paper_witness_h() -> WeightedGraph {
    let mut h = WeightedGraph::zeros(15);
    let one = BigRational::one();
    for r in 0..3 {
        for c in 0..5 {
            h.set(5 * r + c, 5 * r + (c + 1) % 5, one.clone());
        }
    }
    for c in 0..5 {
        h.set(c, 5 + c, one.clone());
        h.set(5 + c, 10 + c, one.clone());
        h.set(10 + c, c, one.clone());
    }
    h.set(12, 2, BigRational::from_integer((-1).into()));
    h
}

/// `hom(G1, h)` summed row by row: a row of G1 is a triangle, so only
/// ordered triangles of `h` contribute as row images, and the three rows
/// interact through the column triangles.
pub fn g1_hom_by_row_transfer(h: &WeightedGraph) -> BigRational {
    let m = h.m();
    let mut states: Vec<([usize; 3], BigRational)> = Vec::new();
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let w = h.get(a, b) * h.get(b, c) * h.get(a, c);
                if !w.is_zero() {
                    states.push(([a, b, c], w));
                }
            }
        }
    }
    let link = |s: &[usize; 3], t: &[usize; 3]| -> BigRational {
        (0..3).map(|c| h.get(s[c], t[c]).clone()).product()
    };
    let mut total = BigRational::zero();
    for (s1, w1) in &states {
        for (s2, w2) in &states {
            let l12 = link(s1, s2);
            if l12.is_zero() {
                continue;
            }
            let head = w1 * w2 * l12;
            for (s3, w3) in &states {
                let l = link(s2, s3) * link(s1, s3);
                if !l.is_zero() {
                    total += &head * w3 * l;
                }
            }
        }
    }
    total
}

/// `hom(G1, H)` computed twice, by elimination and by the row transfer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G1Report {
    pub elimination: BigRational,
    pub row_transfer: BigRational,
}

impl G1Report {
    pub fn agree(&self) -> bool {
        self.elimination == self.row_transfer
    }

    pub fn is_negative(&self) -> bool {
        self.agree() && self.elimination < BigRational::zero()
    }
}

pub fn g1_report() -> Result<G1Report> {
    let h = build_paper_witness_h();
    Ok(G1Report {
        elimination: hom_count(&paper_g1(), &h)?,
        row_transfer: g1_hom_by_row_transfer(&h),
    })
}

/// Certificate for G1 from the hand-made target, once both counting
/// methods agree on a negative value.
pub fn check_g1() -> Result<WitnessCertificate> {
    let report = g1_report()?;
    if !report.agree() {
        return Err(Error::Verification(format!(
            "elimination gives {} but the row transfer gives {}",
            report.elimination, report.row_transfer
        )));
    }
    WitnessCertificate::from_target(&paper_g1(), build_paper_witness_h(), None, WitnessMethod::Manual, None)?
        .ok_or_else(|| {
            Error::Verification(format!("hom(G1, H) = {} is not negative", report.elimination))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Both methods give this value; see `folding_argument` for why it is
    /// positive.
    const G1_HOM: i64 = 60;

    #[test]
    fn frozen_value() {
        let r = g1_report().unwrap();
        assert!(r.agree());
        assert_eq!(r.elimination, BigRational::from_integer(G1_HOM.into()));
        assert!(!r.is_negative());
        assert!(check_g1().is_err());
    }

    /// Rows of G1 are triangles and H's only triangles are its columns, so
    /// each nonzero map is a Latin square on one column triangle and uses
    /// every triangle edge 6 times: 5 columns × 12 Latin squares.
    #[test]
    fn folding_argument() {
        let h = build_paper_witness_h();
        let mut support = h.clone();
        support.set(2, 12, BigRational::one());
        assert_eq!(hom_count(&paper_g1(), &support).unwrap(), BigRational::from_integer((5 * 12).into()));
        assert_eq!(hom_count(&paper_g1(), &h).unwrap(), hom_count(&paper_g1(), &support).unwrap());
    }

    #[test]
    fn shapes() {
        let g1 = paper_g1();
        assert_eq!((g1.n(), g1.edge_count()), (9, 18));
        assert!(g1.degrees().iter().all(|&d| d == 4));
        let h = build_paper_witness_h();
        assert_eq!(h.m(), 15);
        assert_eq!(h.support_size(), 30);
        assert_eq!(h.negative_entries(), vec![(2, 12)]);
    }

    #[test]
    fn row_transfer_matches_elimination_on_small_targets() {
        let g1 = paper_g1();
        for m in 2..=4 {
            let h = WeightedGraph::from_fn(m, |i, j| {
                BigRational::from_integer((((i * 7 + j * 3) % 5) as i64 - 2).into())
            });
            assert_eq!(g1_hom_by_row_transfer(&h), hom_count(&g1, &h).unwrap());
        }
    }

    #[test]
    fn all_ones_count_is_positive() {
        let v = hom_count(&paper_g1(), &WeightedGraph::ones(15, false)).unwrap();
        assert!(v > BigRational::zero());
    }
}
