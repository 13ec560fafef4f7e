/// Productions of a cyclic tag system. Productions may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagSystem {
    pub productions: Vec<Vec<u8>>,
}

impl TagSystem {
    pub fn new(productions: Vec<Vec<u8>>) -> Self {
        assert!(!productions.is_empty(), "a tag system needs at least one production");
        TagSystem { productions }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagState {
    pub i: usize,
    pub d: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TagStep {
    Next(TagState),
    Halted,
}

/// Drops the head of the data string, appending the current production if it
/// was a 1, and advances the counter.
pub fn tag_step(sys: &TagSystem, st: &TagState) -> TagStep {
    let Some((&head, rest)) = st.d.split_first() else {
        return TagStep::Halted;
    };
    let mut d = rest.to_vec();
    if head == 1 {
        d.extend_from_slice(&sys.productions[st.i]);
    }
    TagStep::Next(TagState {
        i: (st.i + 1) % sys.productions.len(),
        d,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagTrace {
    pub states: Vec<TagState>,
    pub halted: bool,
}

/// Initial state followed by at most `max_steps` successors.
pub fn tag_run(sys: &TagSystem, d0: &[u8], max_steps: usize) -> TagTrace {
    let mut states = vec![TagState { i: 0, d: d0.to_vec() }];
    for _ in 0..max_steps {
        match tag_step(sys, states.last().unwrap()) {
            TagStep::Next(s) => states.push(s),
            TagStep::Halted => return TagTrace { states, halted: true },
        }
    }
    let halted = states.last().unwrap().d.is_empty();
    TagTrace { states, halted }
}
