use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// Named graph families with their canonical labelling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// `K_{1,k}` with centre 0.
    Star(usize),
    /// Centre 0 with arms of the given vertex counts, labelled arm by arm.
    Spider(Vec<usize>),
    /// Ladder with `n` rungs and a tail of `k` extra vertices on the `u` rail.
    /// `u_{-k}..u_{n-1}` are `0..n+k`, then `v_0..v_{n-1}`.
    ExtendedLadder {
        n: usize,
        k: usize,
    },
    /// `(w+1) x (h+1)` grid with one pendant attached to the corner.
    /// The pendant is 0 and grid vertex `(i, j)` is `1 + i*(h+1) + j`.
    GridPlus1 {
        w: usize,
        h: usize,
    },
}

pub fn named_family(family: &Family) -> Result<Graph, GraphError> {
    let bad = |msg: &str| Err(GraphError::BadFamily(format!("{family}: {msg}")));
    match *family {
        Family::Path(n) => {
            if n == 0 {
                return bad("needs at least one vertex");
            }
            Graph::new(n, (1..n).map(|i| (i - 1, i)))
        }
        Family::Cycle(n) => {
            if n < 3 {
                return bad("needs at least three vertices");
            }
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::Complete(n) => {
            if n == 0 {
                return bad("needs at least one vertex");
            }
            Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        Family::Star(k) => {
            if k == 0 {
                return bad("needs at least one leaf");
            }
            Graph::new(k + 1, (1..=k).map(|v| (0, v)))
        }
        Family::Spider(ref arms) => {
            if arms.is_empty() || arms.contains(&0) {
                return bad("arms must be non-empty");
            }
            let mut edges = Vec::new();
            let mut next = 1;
            for &len in arms {
                let mut prev = 0;
                for _ in 0..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            Graph::new(next, edges)
        }
        Family::ExtendedLadder { n, k } => {
            if n == 0 {
                return bad("needs at least one rung");
            }
            let u = |i: isize| (i + k as isize) as usize;
            let v = |i: usize| n + k + i;
            let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (u(i as isize), v(i))).collect();
            edges.extend((1..n + k).map(|i| (i - 1, i)));
            edges.extend((1..n).map(|i| (v(i - 1), v(i))));
            Graph::new(2 * n + k, edges)
        }
        Family::GridPlus1 { w, h } => {
            if w == 0 || h == 0 {
                return bad("grid sides must be positive");
            }
            let id = |i: usize, j: usize| 1 + i * (h + 1) + j;
            let mut edges = vec![(0, id(0, 0))];
            for i in 0..=w {
                for j in 0..=h {
                    if i < w {
                        edges.push((id(i, j), id(i + 1, j)));
                    }
                    if j < h {
                        edges.push((id(i, j), id(i, j + 1)));
                    }
                }
            }
            Graph::new(1 + (w + 1) * (h + 1), edges)
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| {
            xs.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Star(k) => write!(f, "star:{k}"),
            Family::Spider(arms) => write!(f, "spider:{}", join(arms)),
            Family::ExtendedLadder { n, k } => write!(f, "ladder:{n},{k}"),
            Family::GridPlus1 { w, h } => write!(f, "gridplus1:{w},{h}"),
        }
    }
}

/// Parses `name:a,b,...`, e.g. `spider:1,2,3` or `ladder:3,1`.
impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::BadFamily(s.to_string());
        let (name, args) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        let one = |nums: &[usize]| {
            if nums.len() == 1 {
                Ok(nums[0])
            } else {
                Err(bad())
            }
        };
        let two = |nums: &[usize]| {
            if nums.len() == 2 {
                Ok((nums[0], nums[1]))
            } else {
                Err(bad())
            }
        };
        Ok(match name.trim().to_ascii_lowercase().as_str() {
            "path" => Family::Path(one(&nums)?),
            "cycle" => Family::Cycle(one(&nums)?),
            "complete" => Family::Complete(one(&nums)?),
            "star" => Family::Star(one(&nums)?),
            "spider" => Family::Spider(nums),
            "ladder" => {
                let (n, k) = two(&nums)?;
                Family::ExtendedLadder { n, k }
            }
            "gridplus1" | "grid+1" => {
                let (w, h) = two(&nums)?;
                Family::GridPlus1 { w, h }
            }
            _ => return Err(bad()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let g = named_family(&Family::Spider(vec![1, 2, 3])).unwrap();
        assert_eq!((g.n(), g.m()), (7, 6));
        let g = named_family(&Family::ExtendedLadder { n: 3, k: 1 }).unwrap();
        assert_eq!((g.n(), g.m()), (7, 8));
        let g = named_family(&Family::GridPlus1 { w: 4, h: 3 }).unwrap();
        assert_eq!((g.n(), g.m()), (21, 4 * 4 + 5 * 3 + 1));
        let g = named_family(&Family::Star(3)).unwrap();
        assert_eq!((g.n(), g.m()), (4, 3));
    }

    #[test]
    fn ladder_degrees() {
        let g = named_family(&Family::ExtendedLadder { n: 3, k: 1 }).unwrap();
        // u_{-1}, u_0, u_1, u_2, v_0, v_1, v_2
        let degrees: Vec<usize> = (0..7).map(|u| g.degree(u)).collect();
        assert_eq!(degrees, vec![1, 3, 3, 2, 2, 3, 2]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(named_family(&Family::Cycle(2)).is_err());
        assert!(named_family(&Family::Spider(vec![1, 0])).is_err());
        assert!(named_family(&Family::GridPlus1 { w: 0, h: 2 }).is_err());
    }

    #[test]
    fn parses_and_prints() {
        for s in ["spider:1,2,3", "ladder:3,1", "gridplus1:4,3", "cycle:5"] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("spider".parse::<Family>().is_err());
        assert!("ladder:3".parse::<Family>().is_err());
    }
}
