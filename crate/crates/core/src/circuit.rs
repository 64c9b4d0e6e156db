//! Acyclic boolean circuits as monoid words: gates and wire moves become
//! tables over the two-dimensional binary context, bit transpositions are
//! conjugates of the front swap by the shift, and circuit equivalence
//! reduces to the word problem.
//!
//! Circuits act on the first coordinate, whose prefix holds the live wire
//! values; the second coordinate is working space for the shift. There is no
//! wire-discard gate, so encoded words keep every unconsumed bit to the
//! right of the declared outputs, and the equivalence check appends a
//! truncation table that keeps only the output prefix.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::monoid::{GeneratorSet, MonoidWord};
use crate::table::Table;
use crate::word::{Context, Word};

/// The fixed two-dimensional binary context of the bridge.
pub fn bridge_context() -> Context {
    Context::new(2, 2).expect("n=2, k=2 is valid")
}

fn bitstrings(len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * 2);
        for s in &out {
            for b in ["0", "1"] {
                let mut t = s.clone();
                t.push_str(b);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

fn pair(ctx: Context, first: &str, key2: &str, vfirst: &str, v2: &str) -> (Word, Word) {
    (
        Word::new(ctx, [first, key2]).expect("valid digits"),
        Word::new(ctx, [vfirst, v2]).expect("valid digits"),
    )
}

/// Basic wire operations available as generator tables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GateKind {
    And,
    Or,
    Not,
    Fork,
    Swap,
}

/// The table of a basic gate, acting on the head of coordinate one with
/// coordinate two untouched. Two-input gates consume two bits and emit one;
/// `Fork` duplicates the head bit; `Swap` transposes the first two bits.
pub fn gate_table(kind: GateKind) -> Table {
    let ctx = bridge_context();
    let entries = match kind {
        GateKind::And | GateKind::Or => bitstrings(2)
            .iter()
            .map(|key| {
                let b1 = key.as_bytes()[0] == b'1';
                let b2 = key.as_bytes()[1] == b'1';
                let out = match kind {
                    GateKind::And => b1 && b2,
                    _ => b1 || b2,
                };
                pair(ctx, key, "", if out { "1" } else { "0" }, "")
            })
            .collect(),
        GateKind::Not => vec![pair(ctx, "0", "", "1", ""), pair(ctx, "1", "", "0", "")],
        GateKind::Fork => vec![pair(ctx, "0", "", "00", ""), pair(ctx, "1", "", "11", "")],
        GateKind::Swap => bitstrings(2)
            .iter()
            .map(|key| {
                let swapped: String = key.chars().rev().collect();
                pair(ctx, key, "", &swapped, "")
            })
            .collect(),
    };
    Table::new(ctx, entries).expect("gate tables are valid")
}

/// The injector producing a constant bit at the head of coordinate one.
pub fn const_table(bit: bool) -> Table {
    let ctx = bridge_context();
    let entry = pair(ctx, "", "", if bit { "1" } else { "0" }, "");
    Table::new(ctx, vec![entry]).expect("valid")
}

/// The shift: moves the head letter of coordinate one onto the front of
/// coordinate two. A bijection of the two-dimensional Cantor space.
pub fn shift_sigma() -> Table {
    let ctx = bridge_context();
    Table::new(
        ctx,
        vec![pair(ctx, "0", "", "", "0"), pair(ctx, "1", "", "", "1")],
    )
    .expect("valid")
}

pub fn shift_sigma_inverse() -> Table {
    let ctx = bridge_context();
    Table::new(
        ctx,
        vec![pair(ctx, "", "0", "0", ""), pair(ctx, "", "1", "1", "")],
    )
    .expect("valid")
}

/// The built-in generator tables of the bridge, by name.
pub fn bridge_generator_tables() -> BTreeMap<String, Table> {
    let mut map = BTreeMap::new();
    map.insert("and".to_string(), gate_table(GateKind::And));
    map.insert("or".to_string(), gate_table(GateKind::Or));
    map.insert("not".to_string(), gate_table(GateKind::Not));
    map.insert("fork".to_string(), gate_table(GateKind::Fork));
    map.insert("swap".to_string(), gate_table(GateKind::Swap));
    map.insert("sigma".to_string(), shift_sigma());
    map.insert("sigma_inv".to_string(), shift_sigma_inverse());
    map.insert("const0".to_string(), const_table(false));
    map.insert("const1".to_string(), const_table(true));
    map
}

/// The bridge's generator set.
pub fn bridge_generators() -> GeneratorSet {
    GeneratorSet::new(bridge_generator_tables()).expect("bridge tables are RM1")
}

/// The word conjugating the front swap by `j-1` shifts, acting as the
/// transposition of bit positions `j` and `j+1` of coordinate one. Its
/// length is `2j - 1 <= 2j`.
pub fn transposition_word(j: usize) -> MonoidWord {
    assert!(j >= 1, "positions are 1-based");
    let mut symbols = Vec::with_capacity(2 * j - 1);
    for _ in 0..j - 1 {
        symbols.push("sigma_inv".to_string());
    }
    symbols.push("swap".to_string());
    for _ in 0..j - 1 {
        symbols.push("sigma".to_string());
    }
    MonoidWord::new(symbols)
}

/// The transposition of bit positions `j`, `j+1` written directly as a
/// table on `j+1`-bit keys.
pub fn direct_transposition_table(j: usize) -> Table {
    assert!(j >= 1);
    let ctx = bridge_context();
    let entries = bitstrings(j + 1)
        .iter()
        .map(|key| {
            let mut bytes = key.clone().into_bytes();
            bytes.swap(j - 1, j);
            let swapped = String::from_utf8(bytes).expect("ascii");
            pair(ctx, key, "", &swapped, "")
        })
        .collect();
    Table::new(ctx, entries).expect("valid")
}

/// Circuit-level gate operations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GateOp {
    And,
    Or,
    Not,
    Fork,
    Const0,
    Const1,
}

impl GateOp {
    pub fn arity(&self) -> usize {
        match self {
            GateOp::And | GateOp::Or => 2,
            GateOp::Not | GateOp::Fork => 1,
            GateOp::Const0 | GateOp::Const1 => 0,
        }
    }
}

/// A wire: a primary input or the output of an earlier gate, both 0-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Wire {
    Input(usize),
    Gate(usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gate {
    pub op: GateOp,
    pub args: Vec<Wire>,
}

/// An acyclic circuit: gates in topological order over the declared inputs,
/// with an ordered list of output wires.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Circuit {
    inputs: usize,
    gates: Vec<Gate>,
    outputs: Vec<Wire>,
}

impl Circuit {
    pub fn new(inputs: usize, gates: Vec<Gate>, outputs: Vec<Wire>) -> Result<Self> {
        let check_wire = |w: Wire, gate_idx: usize| -> Result<()> {
            match w {
                Wire::Input(i) if i < inputs => Ok(()),
                Wire::Gate(g) if g < gate_idx => Ok(()),
                Wire::Input(i) => Err(Error::InvalidCircuit(format!(
                    "input x{} out of range",
                    i + 1
                ))),
                Wire::Gate(g) => Err(Error::InvalidCircuit(format!(
                    "gate g{} used before definition",
                    g + 1
                ))),
            }
        };
        for (idx, gate) in gates.iter().enumerate() {
            if gate.args.len() != gate.op.arity() {
                return Err(Error::InvalidCircuit(format!(
                    "gate g{} has {} arguments, expected {}",
                    idx + 1,
                    gate.args.len(),
                    gate.op.arity()
                )));
            }
            for &arg in &gate.args {
                check_wire(arg, idx)?;
            }
        }
        if outputs.is_empty() {
            return Err(Error::InvalidCircuit("no outputs declared".into()));
        }
        for &w in &outputs {
            check_wire(w, gates.len())?;
        }
        Ok(Circuit {
            inputs,
            gates,
            outputs,
        })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[Wire] {
        &self.outputs
    }

    /// Evaluates the circuit on one input assignment.
    pub fn eval(&self, inputs: &[bool]) -> Result<Vec<bool>> {
        if inputs.len() != self.inputs {
            return Err(Error::ArityMismatch);
        }
        let mut gate_values: Vec<bool> = Vec::with_capacity(self.gates.len());
        let value = |w: Wire, gate_values: &[bool]| match w {
            Wire::Input(i) => inputs[i],
            Wire::Gate(g) => gate_values[g],
        };
        for gate in &self.gates {
            let v = match gate.op {
                GateOp::And => {
                    value(gate.args[0], &gate_values) && value(gate.args[1], &gate_values)
                }
                GateOp::Or => {
                    value(gate.args[0], &gate_values) || value(gate.args[1], &gate_values)
                }
                GateOp::Not => !value(gate.args[0], &gate_values),
                GateOp::Fork => value(gate.args[0], &gate_values),
                GateOp::Const0 => false,
                GateOp::Const1 => true,
            };
            gate_values.push(v);
        }
        Ok(self
            .outputs
            .iter()
            .map(|&w| value(w, &gate_values))
            .collect())
    }
}

/// A circuit rendered as a word over the bridge generators, together with
/// the final wire layout: the outputs occupy the first `output_bits` bit
/// positions of coordinate one, followed by `junk_bits` unconsumed bits.
#[derive(Clone, Debug)]
pub struct EncodedCircuit {
    pub word: MonoidWord,
    pub output_bits: usize,
    pub junk_bits: usize,
}

struct Encoder {
    live: Vec<Wire>,
    app_order: Vec<&'static str>,
    max_live: usize,
}

impl Encoder {
    fn new(inputs: usize) -> Self {
        Encoder {
            live: (0..inputs).map(Wire::Input).collect(),
            app_order: Vec::new(),
            max_live: inputs,
        }
    }

    fn track(&mut self) {
        self.max_live = self.max_live.max(self.live.len());
    }

    fn pos(&self, w: Wire) -> usize {
        self.live
            .iter()
            .position(|&x| x == w)
            .expect("wire is live by use accounting")
    }

    /// Swap bit positions p, p+1 (1-based): the front swap conjugated by
    /// p-1 shifts.
    fn swap_positions(&mut self, p: usize) {
        for _ in 0..p - 1 {
            self.app_order.push("sigma");
        }
        self.app_order.push("swap");
        for _ in 0..p - 1 {
            self.app_order.push("sigma_inv");
        }
        self.live.swap(p - 1, p);
    }

    /// Move the wire in `slot` (0-based) to `target <= slot` by adjacent
    /// transpositions, shifting the wires in between down one slot.
    fn bubble(&mut self, slot: usize, target: usize) {
        for p in (target + 1..=slot).rev() {
            self.swap_positions(p);
        }
    }

    /// Duplicate the front bit; both copies hold the same wire.
    fn fork_front(&mut self) {
        self.app_order.push("fork");
        let w = self.live[0];
        self.live.insert(1, w);
        self.track();
    }
}

/// Encodes a circuit as a word over the bridge generators. Applying the
/// evaluated word to an input assignment `(b, eps)` yields coordinate one
/// starting with the output bits, followed by every unconsumed wire.
pub fn encode_circuit(circuit: &Circuit, cap: u64) -> Result<EncodedCircuit> {
    let mut uses: HashMap<Wire, usize> = HashMap::new();
    for gate in &circuit.gates {
        for &a in &gate.args {
            *uses.entry(a).or_insert(0) += 1;
        }
    }
    for &w in &circuit.outputs {
        *uses.entry(w).or_insert(0) += 1;
    }
    let mut enc = Encoder::new(circuit.inputs);

    for (gi, gate) in circuit.gates.iter().enumerate() {
        let out = Wire::Gate(gi);
        match gate.op {
            GateOp::Const0 | GateOp::Const1 => {
                enc.app_order.push(if gate.op == GateOp::Const0 {
                    "const0"
                } else {
                    "const1"
                });
                enc.live.insert(0, out);
                enc.track();
            }
            GateOp::Not | GateOp::Fork => {
                let a = gate.args[0];
                let remaining = uses.get_mut(&a).expect("counted");
                *remaining -= 1;
                let keep = *remaining > 0;
                if gate.op == GateOp::Fork && !keep {
                    // a copy of a dead wire is the wire itself
                    let slot = enc.pos(a);
                    enc.live[slot] = out;
                    continue;
                }
                enc.bubble(enc.pos(a), 0);
                if keep {
                    enc.fork_front();
                }
                if gate.op == GateOp::Not {
                    enc.app_order.push("not");
                }
                enc.live[0] = out;
            }
            GateOp::And | GateOp::Or => {
                let sym = if gate.op == GateOp::And { "and" } else { "or" };
                let (a, b) = (gate.args[0], gate.args[1]);
                if a == b {
                    let remaining = uses.get_mut(&a).expect("counted");
                    *remaining -= 2;
                    let keep = *remaining > 0;
                    enc.bubble(enc.pos(a), 0);
                    enc.fork_front();
                    if keep {
                        enc.fork_front();
                    }
                } else {
                    let rem_b = uses.get_mut(&b).expect("counted");
                    *rem_b -= 1;
                    let keep_b = *rem_b > 0;
                    let rem_a = uses.get_mut(&a).expect("counted");
                    *rem_a -= 1;
                    let keep_a = *rem_a > 0;
                    if keep_a || keep_b || enc.pos(a) != 0 || enc.pos(b) != 1 {
                        enc.bubble(enc.pos(b), 0);
                        if keep_b {
                            enc.fork_front();
                        }
                        enc.bubble(enc.pos(a), 0);
                        if keep_a {
                            enc.fork_front();
                            enc.swap_positions(2);
                        }
                    }
                }
                enc.app_order.push(sym);
                enc.live.drain(0..2);
                enc.live.insert(0, out);
            }
        }
    }

    // extra copies for outputs listed more than once
    for i in 0..circuit.outputs.len() {
        let w = circuit.outputs[i];
        let need = circuit.outputs.iter().filter(|&&x| x == w).count();
        while enc.live.iter().filter(|&&x| x == w).count() < need {
            enc.bubble(enc.pos(w), 0);
            enc.fork_front();
        }
    }

    // place the outputs on the front slots, in declared order
    for i in 0..circuit.outputs.len() {
        let w = circuit.outputs[i];
        let slot = enc.live[i..]
            .iter()
            .position(|&x| x == w)
            .expect("output copy available")
            + i;
        enc.bubble(slot, i);
    }

    let mut size: u128 = 1;
    for _ in 0..enc.max_live {
        size = size.saturating_mul(2);
        if size > cap as u128 {
            return Err(Error::EnumerationCapExceeded { needed: size, cap });
        }
    }

    let output_bits = circuit.outputs.len();
    let junk_bits = enc.live.len() - output_bits;
    let symbols = enc.app_order.iter().rev().map(|s| s.to_string()).collect();
    Ok(EncodedCircuit {
        word: MonoidWord::new(symbols),
        output_bits,
        junk_bits,
    })
}

/// The table keeping only the first `out_bits` of an `out_bits + junk_bits`
/// prefix of coordinate one. Appended to encoded words so the word problem
/// compares circuits on their declared outputs only.
pub fn output_truncation_table(out_bits: usize, junk_bits: usize, cap: u64) -> Result<Table> {
    let ctx = bridge_context();
    let mut size: u128 = 1;
    for _ in 0..out_bits + junk_bits {
        size = size.saturating_mul(2);
        if size > cap as u128 {
            return Err(Error::EnumerationCapExceeded { needed: size, cap });
        }
    }
    let mut entries = Vec::new();
    for y in bitstrings(out_bits) {
        for z in bitstrings(junk_bits) {
            let mut key = y.clone();
            key.push_str(&z);
            entries.push(pair(ctx, &key, "", &y, ""));
        }
    }
    Table::new(ctx, entries)
}

/// Exhaustive truth-table equivalence of two circuits.
pub fn truth_table_equal(c1: &Circuit, c2: &Circuit) -> Result<bool> {
    if c1.inputs() != c2.inputs() || c1.outputs().len() != c2.outputs().len() {
        return Err(Error::ArityMismatch);
    }
    let n = c1.inputs();
    for bits in 0..(1u64 << n) {
        let assignment: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        if c1.eval(&assignment)? != c2.eval(&assignment)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides circuit equivalence through the word problem: both encodings are
/// extended with their output truncation tables as extra generators, and the
/// two words are compared in the monoid.
pub fn circuit_equal(c1: &Circuit, c2: &Circuit, cap: u64) -> Result<bool> {
    if c1.inputs() != c2.inputs() || c1.outputs().len() != c2.outputs().len() {
        return Err(Error::ArityMismatch);
    }
    let e1 = encode_circuit(c1, cap)?;
    let e2 = encode_circuit(c2, cap)?;
    let mut tables = bridge_generator_tables();
    tables.insert(
        "trunc1".to_string(),
        output_truncation_table(e1.output_bits, e1.junk_bits, cap)?,
    );
    tables.insert(
        "trunc2".to_string(),
        output_truncation_table(e2.output_bits, e2.junk_bits, cap)?,
    );
    let gens = GeneratorSet::new(tables)?;
    let u = MonoidWord::parse("trunc1").then_after(&e1.word);
    let v = MonoidWord::parse("trunc2").then_after(&e2.word);
    gens.word_equal(&u, &v, cap)
}
