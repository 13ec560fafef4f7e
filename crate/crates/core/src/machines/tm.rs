use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Name of the halting state.
pub const HALT: &str = "HALT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    L,
    R,
}

impl Move {
    pub fn delta(self) -> i64 {
        match self {
            Move::L => -1,
            Move::R => 1,
        }
    }
}

/// The 5-tuple `(s, q, s', q', move)`: reading `s` in state `q`, write `s'`,
/// enter `q'`, move the head.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub symbol: String,
    pub state: String,
    pub write: String,
    pub next: String,
    pub mv: Move,
}

impl Rule {
    pub fn new(symbol: &str, state: &str, write: &str, next: &str, mv: Move) -> Self {
        Rule {
            symbol: symbol.into(),
            state: state.into(),
            write: write.into(),
            next: next.into(),
            mv,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TmError {
    #[error("two rules for symbol {symbol:?} in state {state:?}")]
    Nondeterministic { symbol: String, state: String },
    #[error("rule leaves the halting state")]
    HaltAsSource,
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("blank symbol {0:?} is not among the symbols")]
    BlankMissing(String),
    #[error("state name {0:?} is reserved")]
    ReservedState(String),
    #[error("symbol {0:?} is empty or uses a reserved character")]
    BadSymbol(String),
    #[error("invalid machine json: {0}")]
    Json(String),
}

/// A deterministic Turing machine on a two-way infinite tape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringMachine {
    symbols: Vec<String>,
    blank: String,
    states: Vec<String>,
    start: String,
    rules: Vec<Rule>,
    index: HashMap<(String, String), usize>,
}

impl TuringMachine {
    /// `states` need not list `HALT`. State names `B` and `H` are reserved for
    /// tile edge colours, as are the characters `(`, `)`, `,` and `▷` in symbols.
    pub fn new(
        symbols: Vec<String>,
        blank: &str,
        states: Vec<String>,
        start: &str,
        rules: Vec<Rule>,
    ) -> Result<Self, TmError> {
        for s in &symbols {
            if s.is_empty() || s.contains(['(', ')', ',', '▷']) {
                return Err(TmError::BadSymbol(s.clone()));
            }
        }
        if !symbols.iter().any(|s| s == blank) {
            return Err(TmError::BlankMissing(blank.into()));
        }
        let states: Vec<String> = states.into_iter().filter(|q| q != HALT).collect();
        for q in &states {
            if q == "B" || q == "H" || q.is_empty() {
                return Err(TmError::ReservedState(q.clone()));
            }
        }
        let known_state = |q: &str| states.iter().any(|s| s == q);
        if !known_state(start) {
            return Err(TmError::UnknownState(start.into()));
        }
        let mut index = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            if r.state == HALT {
                return Err(TmError::HaltAsSource);
            }
            for s in [&r.symbol, &r.write] {
                if !symbols.contains(s) {
                    return Err(TmError::UnknownSymbol(s.clone()));
                }
            }
            for q in [&r.state, &r.next] {
                if q != HALT && !known_state(q) {
                    return Err(TmError::UnknownState(q.clone()));
                }
            }
            if index.insert((r.symbol.clone(), r.state.clone()), i).is_some() {
                return Err(TmError::Nondeterministic {
                    symbol: r.symbol.clone(),
                    state: r.state.clone(),
                });
            }
        }
        Ok(TuringMachine {
            symbols,
            blank: blank.into(),
            states,
            start: start.into(),
            rules,
            index,
        })
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn blank(&self) -> &str {
        &self.blank
    }

    /// Non-halting states, in declaration order.
    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule_for(&self, symbol: &str, state: &str) -> Option<&Rule> {
        self.index
            .get(&(symbol.to_string(), state.to_string()))
            .map(|&i| &self.rules[i])
    }

    pub fn from_json(text: &str) -> Result<Self, TmError> {
        let raw: TmJson = serde_json::from_str(text).map_err(|e| TmError::Json(e.to_string()))?;
        let rules = raw
            .rules
            .into_iter()
            .map(|(s, q, s2, q2, mv)| Rule { symbol: s, state: q, write: s2, next: q2, mv })
            .collect();
        TuringMachine::new(raw.symbols, &raw.blank, raw.states, &raw.start, rules)
    }

    pub fn to_json(&self) -> String {
        let raw = TmJson {
            symbols: self.symbols.clone(),
            blank: self.blank.clone(),
            states: self.states.clone(),
            start: self.start.clone(),
            rules: self
                .rules
                .iter()
                .map(|r| (r.symbol.clone(), r.state.clone(), r.write.clone(), r.next.clone(), r.mv))
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("machine serialization is infallible")
    }

    /// Splits a string into one-character symbols.
    pub fn parse_input(&self, text: &str) -> Result<Vec<String>, TmError> {
        text.chars()
            .map(|c| {
                let s = c.to_string();
                if self.symbols.contains(&s) {
                    Ok(s)
                } else {
                    Err(TmError::UnknownSymbol(s))
                }
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct TmJson {
    symbols: Vec<String>,
    blank: String,
    states: Vec<String>,
    start: String,
    rules: Vec<(String, String, String, String, Move)>,
}

/// Tape contents (non-blank cells only), head position, state and step count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmConfig {
    tape: BTreeMap<i64, String>,
    pub head: i64,
    pub state: String,
    pub step: usize,
}

impl TmConfig {
    /// Input written from position 0 with the head on its first cell.
    pub fn initial(tm: &TuringMachine, input: &[String]) -> Self {
        let mut c = TmConfig {
            tape: BTreeMap::new(),
            head: 0,
            state: tm.start.clone(),
            step: 0,
        };
        for (i, s) in input.iter().enumerate() {
            c.write(tm, i as i64, s);
        }
        c
    }

    /// Builds a configuration from explicit cells; blanks are dropped.
    pub fn from_cells(
        tm: &TuringMachine,
        cells: impl IntoIterator<Item = (i64, String)>,
        head: i64,
        state: &str,
        step: usize,
    ) -> Self {
        let mut c = TmConfig {
            tape: BTreeMap::new(),
            head,
            state: state.into(),
            step,
        };
        for (p, s) in cells {
            c.write(tm, p, &s);
        }
        c
    }

    fn write(&mut self, tm: &TuringMachine, pos: i64, s: &str) {
        if s == tm.blank {
            self.tape.remove(&pos);
        } else {
            self.tape.insert(pos, s.to_string());
        }
    }

    pub fn read<'a>(&'a self, tm: &'a TuringMachine, pos: i64) -> &'a str {
        self.tape.get(&pos).map_or(tm.blank.as_str(), String::as_str)
    }

    /// Smallest interval holding the head and every non-blank cell.
    pub fn window(&self) -> (i64, i64) {
        let lo = self.tape.keys().next().map_or(self.head, |&k| k.min(self.head));
        let hi = self.tape.keys().next_back().map_or(self.head, |&k| k.max(self.head));
        (lo, hi)
    }

    pub fn non_blank(&self) -> usize {
        self.tape.len()
    }

    pub fn render(&self, tm: &TuringMachine) -> String {
        let (lo, hi) = self.window();
        let mut out = String::new();
        for p in lo..=hi {
            let s = self.read(tm, p);
            if p == self.head {
                out.push_str(&format!("[{s}]"));
            } else {
                out.push_str(s);
            }
        }
        format!("{:>3} {:<6} {}", self.step, self.state, out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaltKind {
    /// Entered `HALT`.
    Halt,
    /// No rule for the scanned symbol and state.
    Stuck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepResult {
    Running(TmConfig),
    Halted(TmConfig, HaltKind),
}

/// One step. A rule into `HALT` yields the configuration after the write,
/// in state `HALT`, with the head left on the written cell. A missing rule
/// yields the unchanged configuration flagged as stuck.
pub fn tm_step(tm: &TuringMachine, c: &TmConfig) -> StepResult {
    assert!(c.state != HALT, "cannot step a halted machine");
    let Some(rule) = tm.rule_for(c.read(tm, c.head), &c.state) else {
        return StepResult::Halted(c.clone(), HaltKind::Stuck);
    };
    let mut next = c.clone();
    next.write(tm, c.head, &rule.write);
    next.step += 1;
    next.state = rule.next.clone();
    if rule.next == HALT {
        return StepResult::Halted(next, HaltKind::Halt);
    }
    next.head += rule.mv.delta();
    StepResult::Running(next)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmTrace {
    /// `c_0 .. c_k`; ends with the `HALT` configuration if the machine halted.
    pub configs: Vec<TmConfig>,
    pub halted: Option<HaltKind>,
}

impl TmTrace {
    /// Step at which the machine entered `HALT`, if it did.
    pub fn halt_step(&self) -> Option<usize> {
        (self.halted == Some(HaltKind::Halt)).then(|| self.configs.last().unwrap().step)
    }
}

pub fn tm_run(tm: &TuringMachine, input: &[String], max_steps: usize) -> TmTrace {
    assert!(max_steps >= 1, "max_steps must be positive");
    let mut configs = vec![TmConfig::initial(tm, input)];
    for _ in 0..max_steps {
        match tm_step(tm, configs.last().unwrap()) {
            StepResult::Running(c) => configs.push(c),
            StepResult::Halted(c, HaltKind::Halt) => {
                configs.push(c);
                return TmTrace { configs, halted: Some(HaltKind::Halt) };
            }
            StepResult::Halted(_, HaltKind::Stuck) => {
                return TmTrace { configs, halted: Some(HaltKind::Stuck) };
            }
        }
    }
    TmTrace { configs, halted: None }
}

/// Fixture machines used throughout the tests and the CLI.
pub mod fixtures {
    use super::*;

    fn strings(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    /// Reads a 1, rewrites it and halts.
    pub fn immediate_halter() -> TuringMachine {
        TuringMachine::new(
            strings(&["0", "1"]),
            "0",
            strings(&["q0"]),
            "q0",
            vec![Rule::new("1", "q0", "1", HALT, Move::R)],
        )
        .unwrap()
    }

    /// Walks right over blanks forever.
    pub fn right_mover() -> TuringMachine {
        TuringMachine::new(
            strings(&["0", "1"]),
            "0",
            strings(&["q0"]),
            "q0",
            vec![Rule::new("0", "q0", "0", "q0", Move::R)],
        )
        .unwrap()
    }

    /// The two-state busy beaver: six steps, four 1s.
    pub fn busy_beaver2() -> TuringMachine {
        TuringMachine::new(
            strings(&["0", "1"]),
            "0",
            strings(&["q0", "q1"]),
            "q0",
            vec![
                Rule::new("0", "q0", "1", "q1", Move::R),
                Rule::new("1", "q0", "1", "q1", Move::L),
                Rule::new("0", "q1", "1", "q0", Move::L),
                Rule::new("1", "q1", "1", HALT, Move::R),
            ],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn input(s: &str) -> Vec<String> {
        s.chars().map(|c| c.to_string()).collect()
    }

    #[test]
    fn immediate_halt_after_one_step() {
        let tm = immediate_halter();
        let t = tm_run(&tm, &input("1"), 10);
        assert_eq!(t.halted, Some(HaltKind::Halt));
        assert_eq!(t.halt_step(), Some(1));
        assert_eq!(t.configs[1].read(&tm, 0), "1");
    }

    #[test]
    fn mover_never_halts() {
        let tm = right_mover();
        let t = tm_run(&tm, &[], 20);
        assert_eq!(t.halted, None);
        assert_eq!(t.configs.len(), 21);
        for (k, c) in t.configs.iter().enumerate() {
            assert_eq!(c.head, k as i64);
            assert_eq!(c.state, "q0");
        }
    }

    #[test]
    fn busy_beaver_halts_at_six_with_four_ones() {
        let tm = busy_beaver2();
        let t = tm_run(&tm, &[], 100);
        assert_eq!(t.halt_step(), Some(6));
        assert_eq!(t.configs.last().unwrap().non_blank(), 4);
        let again = tm_run(&tm, &[], 100);
        assert_eq!(t, again);
    }

    #[test]
    fn stuck_is_flagged() {
        let tm = immediate_halter();
        let t = tm_run(&tm, &input("0"), 5);
        assert_eq!(t.halted, Some(HaltKind::Stuck));
        assert_eq!(t.configs.len(), 1);
    }

    #[test]
    fn validation() {
        let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let dup = vec![
            Rule::new("0", "q0", "1", "q0", Move::R),
            Rule::new("0", "q0", "0", "q0", Move::L),
        ];
        assert!(matches!(
            TuringMachine::new(s(&["0", "1"]), "0", s(&["q0"]), "q0", dup),
            Err(TmError::Nondeterministic { .. })
        ));
        let from_halt = vec![Rule::new("0", HALT, "1", "q0", Move::R)];
        assert_eq!(
            TuringMachine::new(s(&["0"]), "0", s(&["q0"]), "q0", from_halt),
            Err(TmError::HaltAsSource)
        );
        assert_eq!(
            TuringMachine::new(s(&["0"]), "0", s(&["H"]), "H", vec![]),
            Err(TmError::ReservedState("H".into()))
        );
        assert!(TuringMachine::new(s(&["(0"]), "(0", s(&["q"]), "q", vec![]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let tm = busy_beaver2();
        let back = TuringMachine::from_json(&tm.to_json()).unwrap();
        assert_eq!(back, tm);
        let text = r#"{"symbols":["B","1"],"blank":"B","states":["q0","HALT"],"start":"q0","rules":[["B","q0","1","HALT","R"]]}"#;
        let tm = TuringMachine::from_json(text).unwrap();
        assert_eq!(tm_run(&tm, &[], 3).halt_step(), Some(1));
    }
}
