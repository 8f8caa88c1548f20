//! Graph surgeries: d-dipole insertion and contraction, connected sum along
//! lines of equal color.
//!
//! A d-dipole is a pair of opposite nodes joined by exactly `d` lines, i.e.
//! by every color except one.

use thiserror::Error;

use crate::graph::{self, Color, ColoredGraph, Defect, LineId};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("no line {0}")]
    NoSuchLine(LineId),
    #[error("nodes +{} and -{} are not a d-dipole", .0 + 1, .1 + 1)]
    NotADipole(usize, usize),
    #[error("lines have different colors ({0} and {1})")]
    ColorMismatch(Color, Color),
    #[error("graphs have different ranks ({0} and {1})")]
    RankMismatch(usize, usize),
    #[error("invalid graph: {0}")]
    Invalid(Defect),
}

/// Inserts a d-dipole on `line`: new nodes `+(n+1)` and `-(n+1)` joined by
/// every color but `line.color`, spliced into the original line.
pub fn insert_dipole(g: &ColoredGraph, line: LineId) -> Result<ColoredGraph, MoveError> {
    if !g.has_line(line) {
        return Err(MoveError::NoSuchLine(line));
    }
    let n = g.half_size();
    let mut m = g.matchings().to_vec();
    for (c, perm) in m.iter_mut().enumerate() {
        if c == line.color {
            let w = perm[line.black];
            perm[line.black] = n;
            perm.push(w);
        } else {
            perm.push(n);
        }
    }
    ColoredGraph::new(g.rank(), m).map_err(MoveError::Invalid)
}

/// Contracts the d-dipole formed by positive node `a` and negative node
/// `abar` (0-based), renumbering the remaining nodes in order.
pub fn contract_dipole(g: &ColoredGraph, a: usize, abar: usize) -> Result<ColoredGraph, MoveError> {
    let n = g.half_size();
    if a >= n || abar >= n {
        return Err(MoveError::NotADipole(a, abar));
    }
    let open: Vec<Color> = g.colors().filter(|&c| g.matching(c)[a] != abar).collect();
    let [i] = open[..] else {
        return Err(MoveError::NotADipole(a, abar));
    };
    let w = g.matching(i)[a];
    let v = g.inverse(i)[abar];
    let shift = |x: usize, removed: usize| if x > removed { x - 1 } else { x };
    let m = g
        .colors()
        .map(|c| {
            (0..n)
                .filter(|&b| b != a)
                .map(|b| {
                    let target = if c == i && b == v {
                        w
                    } else {
                        g.matching(c)[b]
                    };
                    shift(target, abar)
                })
                .collect()
        })
        .collect();
    ColoredGraph::new(g.rank(), m).map_err(MoveError::Invalid)
}

/// Cuts `line1` in `g1` and `line2` in `g2` and reconnects the open ends
/// across the two graphs. Nodes of `g2` are numbered after those of `g1`.
pub fn connected_sum(
    g1: &ColoredGraph,
    g2: &ColoredGraph,
    line1: LineId,
    line2: LineId,
) -> Result<ColoredGraph, MoveError> {
    if line1.color != line2.color {
        return Err(MoveError::ColorMismatch(line1.color, line2.color));
    }
    if g1.rank() != g2.rank() {
        return Err(MoveError::RankMismatch(g1.rank(), g2.rank()));
    }
    for (g, l) in [(g1, line1), (g2, line2)] {
        graph::require_valid(g).map_err(MoveError::Invalid)?;
        if !g.has_line(l) {
            return Err(MoveError::NoSuchLine(l));
        }
    }
    let n1 = g1.half_size();
    let m = g1
        .colors()
        .map(|c| {
            let mut perm = g1.matching(c).to_vec();
            perm.extend(g2.matching(c).iter().map(|&w| w + n1));
            if c == line1.color {
                let (v1, v2) = (line1.black, line2.black + n1);
                perm.swap(v1, v2);
            }
            perm
        })
        .collect();
    ColoredGraph::new(g1.rank(), m).map_err(MoveError::Invalid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_melon, is_connected, validate};

    fn pillow(color: Color) -> ColoredGraph {
        let mut m = vec![vec![0, 1]; 5];
        m[color] = vec![1, 0];
        ColoredGraph::new(4, m).unwrap()
    }

    #[test]
    fn melon_dipoles_give_pillows() {
        let melon = generate_melon(4).unwrap();
        assert_eq!(
            insert_dipole(&melon, LineId { color: 0, black: 0 }).unwrap(),
            pillow(0)
        );
        assert_eq!(
            insert_dipole(&melon, LineId { color: 1, black: 0 }).unwrap(),
            pillow(1)
        );
        assert_eq!(
            insert_dipole(&melon, LineId { color: 5, black: 0 }),
            Err(MoveError::NoSuchLine(LineId { color: 5, black: 0 }))
        );
    }

    #[test]
    fn contraction() {
        let melon = generate_melon(4).unwrap();
        assert_eq!(contract_dipole(&pillow(0), 1, 1).unwrap(), melon);
        assert_eq!(contract_dipole(&pillow(1), 1, 1).unwrap(), melon);
        // the original pair of pillow-1 is a dipole too
        assert_eq!(contract_dipole(&pillow(1), 0, 0).unwrap(), melon);
        assert_eq!(
            contract_dipole(&melon, 0, 0),
            Err(MoveError::NotADipole(0, 0))
        );
        assert_eq!(
            contract_dipole(&pillow(1), 0, 1),
            Err(MoveError::NotADipole(0, 1))
        );
    }

    #[test]
    fn connected_sum_of_melons() {
        let melon = generate_melon(4).unwrap();
        let l = LineId { color: 0, black: 0 };
        let sum = connected_sum(&melon, &melon, l, l).unwrap();
        assert_eq!(sum, pillow(0));
        assert!(validate(&sum).ok());
        assert!(is_connected(&sum));
        assert_eq!(
            connected_sum(&melon, &melon, l, LineId { color: 1, black: 0 }),
            Err(MoveError::ColorMismatch(0, 1))
        );
    }
}
