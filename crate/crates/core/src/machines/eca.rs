use std::fmt;

/// An elementary cellular automaton, identified by its Wolfram number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EcaRule(pub u8);

impl EcaRule {
    pub fn new(n: u8) -> Self {
        EcaRule(n)
    }

    pub fn number(self) -> u8 {
        self.0
    }

    /// New centre cell for neighbourhood `(a, b, c)`: bit `4a + 2b + c` of the
    /// rule number.
    pub fn table(self, a: u8, b: u8, c: u8) -> u8 {
        debug_assert!(a < 2 && b < 2 && c < 2);
        (self.0 >> (4 * a + 2 * b + c)) & 1
    }
}

impl fmt::Display for EcaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {}", self.0)
    }
}

/// What lies beyond the ends of a finite row.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Boundary {
    #[default]
    ZeroPad,
    Wrap,
}

pub fn parse_bits(s: &str) -> Option<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(0),
            '1' => Some(1),
            _ => None,
        })
        .collect()
}

pub fn format_bits(bits: &[u8]) -> String {
    bits.iter().map(|b| if *b == 0 { '0' } else { '1' }).collect()
}

pub fn eca_step(rule: EcaRule, row: &[u8], boundary: Boundary) -> Vec<u8> {
    assert!(!row.is_empty(), "row must be non-empty");
    let n = row.len();
    let at = |i: isize| -> u8 {
        if (0..n as isize).contains(&i) {
            row[i as usize]
        } else {
            match boundary {
                Boundary::ZeroPad => 0,
                Boundary::Wrap => row[i.rem_euclid(n as isize) as usize],
            }
        }
    };
    (0..n as isize)
        .map(|i| rule.table(at(i - 1), at(i), at(i + 1)))
        .collect()
}

/// `steps + 1` rows: the input followed by each successive generation,
/// zero-padded.
pub fn eca_run(rule: EcaRule, row: &[u8], steps: usize) -> Vec<Vec<u8>> {
    let mut rows = vec![row.to_vec()];
    for _ in 0..steps {
        let next = eca_step(rule, rows.last().unwrap(), Boundary::ZeroPad);
        rows.push(next);
    }
    rows
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PermutivityClass {
    Leftmost,
    Rightmost,
    Both,
    Neither,
}

impl PermutivityClass {
    /// Permutive in either outer variable implies chaotic dynamics.
    pub fn chaotic(self) -> bool {
        self != PermutivityClass::Neither
    }
}

pub fn permutivity(rule: EcaRule) -> PermutivityClass {
    let pairs = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let left = pairs.iter().all(|&(b, c)| rule.table(0, b, c) != rule.table(1, b, c));
    let right = pairs.iter().all(|&(a, b)| rule.table(a, b, 0) != rule.table(a, b, 1));
    match (left, right) {
        (true, true) => PermutivityClass::Both,
        (true, false) => PermutivityClass::Leftmost,
        (false, true) => PermutivityClass::Rightmost,
        (false, false) => PermutivityClass::Neither,
    }
}
