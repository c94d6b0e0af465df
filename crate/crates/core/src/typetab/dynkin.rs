use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::piclat::Class;

/// An irreducible simply-laced Dynkin diagram.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Component {
    A(u8),
    D(u8),
    E(u8),
}

impl Component {
    pub fn rank(&self) -> usize {
        match *self {
            Component::A(n) | Component::D(n) | Component::E(n) => n as usize,
        }
    }
}

/// Connected components of the graph on `roots` with an edge when `a . b = 1`,
/// as lists of indices in increasing order.
pub fn components(roots: &[Class]) -> Vec<Vec<usize>> {
    let n = roots.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        comp[s] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            for u in 0..n {
                if comp[u] == usize::MAX && roots[u].dot(&roots[v]) == 1 {
                    comp[u] = id;
                    stack.push(u);
                }
            }
        }
        members.sort();
        out.push(members);
    }
    out
}

/// Classify a connected simply-laced tree; `None` if it is not of ADE type.
pub fn classify(roots: &[Class]) -> Option<Component> {
    let n = roots.len();
    let adj = |i: usize| (0..n).filter(move |&j| j != i && roots[i].dot(&roots[j]) == 1);
    let edges: usize = (0..n).map(|i| adj(i).count()).sum::<usize>() / 2;
    if edges + 1 != n {
        return None;
    }
    let degrees: Vec<usize> = (0..n).map(|i| adj(i).count()).collect();
    let branch: Vec<usize> = (0..n).filter(|&i| degrees[i] >= 3).collect();
    match branch.as_slice() {
        [] => Some(Component::A(n as u8)),
        [c] if degrees[*c] == 3 => {
            let mut arms: Vec<usize> = adj(*c)
                .map(|start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    loop {
                        let next = adj(cur).find(|&x| x != prev);
                        match next {
                            Some(x) => {
                                prev = cur;
                                cur = x;
                                len += 1;
                            }
                            None => break len,
                        }
                    }
                })
                .collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, _] => Some(Component::D(n as u8)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Some(Component::E(n as u8)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Canonical label such as `"2A1A2"` or `"A1 2A2"`; empty for the empty set.
pub fn label(parts: &[Component]) -> String {
    let mut counts: BTreeMap<Component, usize> = BTreeMap::new();
    for p in parts {
        *counts.entry(*p).or_default() += 1;
    }
    let mut s = String::new();
    for (i, (c, m)) in counts.iter().enumerate() {
        if *m > 1 {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{m}");
        }
        let _ = match c {
            Component::A(n) => write!(s, "A{n}"),
            Component::D(n) => write!(s, "D{n}"),
            Component::E(n) => write!(s, "E{n}"),
        };
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        use Component::*;
        assert_eq!(label(&[A(1), A(1), A(2)]), "2A1A2");
        assert_eq!(label(&[A(2), A(1), A(2)]), "A1 2A2");
        assert_eq!(label(&[A(2), A(1)]), "A1A2");
        assert_eq!(label(&[E(6)]), "E6");
        assert_eq!(label(&[]), "");
    }

    #[test]
    fn classify_small_diagrams() {
        let d4 = [
            Class::diff(2, 3),
            Class::diff(3, 4),
            Class::diff(4, 5),
            Class::line3(1, 2, 3),
        ];
        assert_eq!(components(&d4).len(), 1);
        assert_eq!(classify(&d4), Some(Component::D(4)));
        let a4 = [
            Class::diff(1, 2),
            Class::diff(2, 3),
            Class::diff(3, 4),
            Class::line3(1, 2, 3),
        ];
        assert_eq!(classify(&a4), Some(Component::A(4)));
    }
}
