use std::fmt;

use serde::{Serialize, Serializer};

/// Simple Lie algebra types. `B` starts at 2, `C` at 3 and `D` at 4 so that
/// no two variants name isomorphic algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl SimpleType {
    pub fn dim(&self) -> usize {
        match *self {
            SimpleType::A(n) => n * (n + 2),
            SimpleType::B(n) | SimpleType::C(n) => n * (2 * n + 1),
            SimpleType::D(n) => n * (2 * n - 1),
            SimpleType::G2 => 14,
            SimpleType::F4 => 52,
            SimpleType::E6 => 78,
            SimpleType::E7 => 133,
            SimpleType::E8 => 248,
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            SimpleType::A(n) | SimpleType::B(n) | SimpleType::C(n) | SimpleType::D(n) => n,
            SimpleType::G2 => 2,
            SimpleType::F4 => 4,
            SimpleType::E6 => 6,
            SimpleType::E7 => 7,
            SimpleType::E8 => 8,
        }
    }

    /// All simple types of dimension at most `max_dim`.
    fn up_to(max_dim: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        let mut push_series = |make: fn(usize) -> SimpleType, start: usize| {
            let mut n = start;
            while make(n).dim() <= max_dim {
                out.push(make(n));
                n += 1;
            }
        };
        push_series(SimpleType::A, 1);
        push_series(SimpleType::B, 2);
        push_series(SimpleType::C, 3);
        push_series(SimpleType::D, 4);
        for t in [SimpleType::G2, SimpleType::F4, SimpleType::E6, SimpleType::E7, SimpleType::E8] {
            if t.dim() <= max_dim {
                out.push(t);
            }
        }
        out
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::A(n) => write!(f, "A{n}"),
            SimpleType::B(n) => write!(f, "B{n}"),
            SimpleType::C(n) => write!(f, "C{n}"),
            SimpleType::D(n) => write!(f, "D{n}"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl Serialize for SimpleType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `A1+A1`, or `0` for the empty multiset.
pub(crate) fn format_levi(l: &[SimpleType]) -> String {
    if l.is_empty() {
        "0".into()
    } else {
        l.iter().map(ToString::to_string).collect::<Vec<_>>().join("+")
    }
}

/// Every sorted multiset of simple types with the given total dimension,
/// total rank and number of members.
pub(crate) fn multisets(dim: usize, rank: usize, count: usize) -> Vec<Vec<SimpleType>> {
    let types = SimpleType::up_to(dim);
    let mut out = Vec::new();
    let mut current = Vec::new();
    search(&types, 0, dim, rank, count, &mut current, &mut out);
    out
}

fn search(
    types: &[SimpleType],
    from: usize,
    dim: usize,
    rank: usize,
    count: usize,
    current: &mut Vec<SimpleType>,
    out: &mut Vec<Vec<SimpleType>>,
) {
    if count == 0 {
        if dim == 0 && rank == 0 {
            out.push(current.clone());
        }
        return;
    }
    for (i, t) in types.iter().enumerate().skip(from) {
        if t.dim() <= dim && t.rank() <= rank {
            current.push(*t);
            search(types, i, dim - t.dim(), rank - t.rank(), count - 1, current, out);
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identification() {
        assert_eq!(multisets(3, 1, 1), vec![vec![SimpleType::A(1)]]);
        assert_eq!(multisets(6, 2, 2), vec![vec![SimpleType::A(1), SimpleType::A(1)]]);
        assert_eq!(multisets(8, 2, 1), vec![vec![SimpleType::A(2)]]);
        assert_eq!(multisets(15, 3, 1), vec![vec![SimpleType::A(3)]]);
        assert_eq!(multisets(10, 2, 1), vec![vec![SimpleType::B(2)]]);
        assert_eq!(multisets(21, 3, 1).len(), 2);
        assert!(multisets(4, 1, 1).is_empty());
        assert_eq!(format_levi(&[SimpleType::A(1), SimpleType::A(1)]), "A1+A1");
    }
}
