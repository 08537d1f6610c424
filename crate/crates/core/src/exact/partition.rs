/// A partition of an integer into distinct part values with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// `(part value, multiplicity)`, part values strictly increasing.
    pub parts: Vec<(u32, u32)>,
}

impl Partition {
    /// The partitioned integer.
    pub fn total(&self) -> u32 {
        self.parts.iter().map(|(r, i)| r * i).sum()
    }

    /// Total number of parts counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.parts.iter().map(|(_, i)| i).sum()
    }
}

/// All partitions of `r`, ordered lexicographically by their part values
/// read from the largest part down. `partitions(0)` is the single empty
/// partition.
pub fn partitions(r: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    rec(r, r, &mut stack, &mut out);
    out
}

fn rec(rest: u32, max: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        let mut parts: Vec<(u32, u32)> = Vec::new();
        for &p in stack.iter().rev() {
            match parts.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => parts.push((p, 1)),
            }
        }
        out.push(Partition { parts });
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        stack.push(p);
        rec(rest - p, p, stack, out);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let known = [1usize, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (r, &c) in known.iter().enumerate() {
            let ps = partitions(r as u32);
            assert_eq!(ps.len(), c);
            for p in &ps {
                assert_eq!(p.total(), r as u32);
                assert!(p.parts.windows(2).all(|w| w[0].0 < w[1].0));
            }
        }
    }

    #[test]
    fn four() {
        let ps: Vec<_> = partitions(4).into_iter().map(|p| p.parts).collect();
        assert_eq!(
            ps,
            vec![
                vec![(4, 1)],
                vec![(1, 1), (3, 1)],
                vec![(2, 2)],
                vec![(1, 2), (2, 1)],
                vec![(1, 4)]
            ]
        );
    }
}
