//! Toy monotone machines.
//!
//! Both reference machines read their one-way input as a stream of 2-bit
//! opcodes and write to a one-way output:
//!
//! | bits | opcode | effect |
//! |------|--------|--------|
//! | `00` | emit-0 | append `0` to the output |
//! | `01` | emit-1 | append `1` to the output |
//! | `10` | loop   | jump back to the first stored instruction; no further input is read |
//! | `11` | halt   | stop |
//!
//! Every decoded opcode is appended to the stored program. One step is the
//! decode-and-execute of a fresh opcode, or the execution of one stored
//! instruction while replaying. An opcode is read atomically: with fewer than
//! two unread input bits the machine blocks without consuming anything.
//!
//! `GRUESOME` differs from `NATURAL` only in that once ten bits have been
//! emitted the two emit opcodes swap meaning (`00` emits `1`, `01` emits `0`).
//! Meanings are resolved at execution time, so replayed instructions swap too.
//!
//! These machines are deliberately not universal.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::{Bit, BitString};
use crate::error::Error;

/// Emission count after which `GRUESOME` swaps its emit opcodes.
pub const GRUE_SWAP_AFTER: u64 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MachineId {
    Natural,
    Gruesome,
}

impl MachineId {
    pub const ALL: [MachineId; 2] = [MachineId::Natural, MachineId::Gruesome];

    pub fn name(self) -> &'static str {
        match self {
            MachineId::Natural => "natural",
            MachineId::Gruesome => "gruesome",
        }
    }

    fn emit_bit(self, opcode: Opcode, emitted_so_far: u64) -> Bit {
        let plain = match opcode {
            Opcode::Emit0 => Bit::Zero,
            Opcode::Emit1 => Bit::One,
            Opcode::Loop | Opcode::Halt => unreachable!("not an emit opcode"),
        };
        match self {
            MachineId::Gruesome if emitted_so_far >= GRUE_SWAP_AFTER => plain.flip(),
            _ => plain,
        }
    }
}

impl fmt::Display for MachineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MachineId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "natural" => Ok(MachineId::Natural),
            "gruesome" => Ok(MachineId::Gruesome),
            _ => Err(Error::Parse(alloc::format!("unknown machine {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Opcode {
    Emit0,
    Emit1,
    Loop,
    Halt,
}

impl Opcode {
    pub fn decode(hi: Bit, lo: Bit) -> Opcode {
        match (hi, lo) {
            (Bit::Zero, Bit::Zero) => Opcode::Emit0,
            (Bit::Zero, Bit::One) => Opcode::Emit1,
            (Bit::One, Bit::Zero) => Opcode::Loop,
            (Bit::One, Bit::One) => Opcode::Halt,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Running,
    Halted,
    BlockedOnInput,
}

/// Output, consumed input and step count only ever grow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineState {
    stored_program: Vec<Opcode>,
    instruction_cursor: usize,
    input_consumed: usize,
    output: BitString,
    emission_count: u64,
    steps: u64,
    status: Status,
}

impl Default for MachineState {
    fn default() -> Self {
        MachineState::new()
    }
}

impl MachineState {
    pub fn new() -> Self {
        MachineState {
            stored_program: Vec::new(),
            instruction_cursor: 0,
            input_consumed: 0,
            output: BitString::empty(),
            emission_count: 0,
            steps: 0,
            status: Status::Running,
        }
    }

    pub fn stored_program(&self) -> &[Opcode] {
        &self.stored_program
    }

    pub fn instruction_cursor(&self) -> usize {
        self.instruction_cursor
    }

    pub fn input_consumed(&self) -> usize {
        self.input_consumed
    }

    pub fn output(&self) -> &BitString {
        &self.output
    }

    pub fn emission_count(&self) -> u64 {
        self.emission_count
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn status(&self) -> Status {
        self.status
    }

    /// True once the machine will never read another input bit.
    pub fn is_replaying(&self) -> bool {
        self.instruction_cursor < self.stored_program.len()
    }

    /// Executes one step against `input` (the whole input tape seen so far;
    /// only bits past `input_consumed` are read). Returns the emitted bit.
    ///
    /// A blocked machine retries its decode, so a caller may extend the input
    /// and keep stepping. A halted machine does nothing.
    pub fn step(&mut self, machine: MachineId, input: &[Bit]) -> Option<Bit> {
        if self.status == Status::Halted {
            return None;
        }
        let opcode = if self.is_replaying() {
            self.stored_program[self.instruction_cursor]
        } else {
            let start = self.input_consumed;
            if input.len() < start + 2 {
                self.status = Status::BlockedOnInput;
                return None;
            }
            let op = Opcode::decode(input[start], input[start + 1]);
            self.input_consumed += 2;
            self.stored_program.push(op);
            op
        };
        self.status = Status::Running;
        self.steps += 1;
        match opcode {
            Opcode::Emit0 | Opcode::Emit1 => {
                let bit = machine.emit_bit(opcode, self.emission_count);
                self.output.push(bit);
                self.emission_count += 1;
                self.instruction_cursor += 1;
                Some(bit)
            }
            Opcode::Loop => {
                self.instruction_cursor = 0;
                None
            }
            Opcode::Halt => {
                self.instruction_cursor += 1;
                self.status = Status::Halted;
                None
            }
        }
    }
}

/// Record of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunTrace {
    pub final_state: MachineState,
    /// `consumption_log[m - 1]` is the input consumed when the output first
    /// reached length `m`.
    pub consumption_log: Vec<usize>,
}

/// Runs `machine` on `input` until it halts, blocks, or has taken `max_steps` steps.
pub fn run(machine: MachineId, input: &BitString, max_steps: u64) -> RunTrace {
    let mut state = MachineState::new();
    let mut consumption_log = Vec::new();
    while state.steps < max_steps {
        if state.step(machine, input.bits()).is_some() {
            consumption_log.push(state.input_consumed);
        }
        if state.status != Status::Running {
            break;
        }
    }
    RunTrace {
        final_state: state,
        consumption_log,
    }
}

/// Input consumed at the step where the output first extends `target`, if
/// that happens within `max_steps`.
pub fn minimal_witness_length(
    machine: MachineId,
    input: &BitString,
    target: &BitString,
    max_steps: u64,
) -> Option<usize> {
    if target.is_empty() {
        return Some(0);
    }
    let trace = run(machine, input, max_steps);
    if target.is_prefix_of(trace.final_state.output()) {
        Some(trace.consumption_log[target.len() - 1])
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn natural_loop_program() {
        let trace = run(MachineId::Natural, &bs("0010"), 50);
        let out = trace.final_state.output();
        assert!(out.len() >= 12);
        assert!(out.iter().all(|b| b == Bit::Zero));
        assert_eq!(trace.consumption_log[0], 2);
        assert_eq!(trace.consumption_log[1], 4);
        assert_eq!(trace.final_state.input_consumed(), 4);
        assert_eq!(trace.final_state.status(), Status::Running);
        assert_eq!(trace.final_state.steps(), 50);
    }

    #[test]
    fn halt_opcode() {
        let trace = run(MachineId::Natural, &bs("11"), 50);
        assert_eq!(trace.final_state.status(), Status::Halted);
        assert!(trace.final_state.output().is_empty());
        assert_eq!(trace.final_state.input_consumed(), 2);
    }

    #[test]
    fn empty_input_blocks() {
        let trace = run(MachineId::Natural, &bs(""), 50);
        assert_eq!(trace.final_state.status(), Status::BlockedOnInput);
        assert!(trace.final_state.output().is_empty());
        assert_eq!(trace.final_state.steps(), 0);
    }

    #[test]
    fn odd_trailing_bit_is_not_consumed() {
        let trace = run(MachineId::Natural, &bs("011"), 50);
        assert_eq!(trace.final_state.output(), &bs("1"));
        assert_eq!(trace.final_state.input_consumed(), 2);
        assert_eq!(trace.final_state.status(), Status::BlockedOnInput);
    }

    #[test]
    fn zero_steps_stays_running() {
        let trace = run(MachineId::Natural, &bs("00"), 0);
        assert_eq!(trace.final_state.status(), Status::Running);
        assert!(trace.final_state.output().is_empty());
    }

    #[test]
    fn bare_loop_spins_silently() {
        let trace = run(MachineId::Natural, &bs("10"), 20);
        assert!(trace.final_state.output().is_empty());
        assert_eq!(trace.final_state.steps(), 20);
    }

    #[test]
    fn witness_examples() {
        let m = MachineId::Natural;
        assert_eq!(
            minimal_witness_length(m, &bs("0010"), &bs("0"), 50),
            Some(2)
        );
        assert_eq!(
            minimal_witness_length(m, &bs("0010"), &bs("0000"), 50),
            Some(4)
        );
        assert_eq!(minimal_witness_length(m, &bs("01"), &bs("0"), 50), None);
        assert_eq!(minimal_witness_length(m, &bs(""), &bs(""), 0), Some(0));
    }

    #[test]
    fn grue_mirror() {
        let natural = run(MachineId::Natural, &bs("0010"), 30);
        let grue = run(MachineId::Gruesome, &bs("0010"), 30);
        assert_eq!(
            natural.final_state.output().prefix(12),
            BitString::repeat(Bit::Zero, 12)
        );
        let mut expected = BitString::repeat(Bit::Zero, 10);
        expected.push(Bit::One);
        expected.push(Bit::One);
        assert_eq!(grue.final_state.output().prefix(12), expected);
    }

    #[test]
    fn machine_names_round_trip() {
        for m in MachineId::ALL {
            assert_eq!(m.name().parse::<MachineId>().unwrap(), m);
        }
        assert!("turing".parse::<MachineId>().is_err());
    }
}
