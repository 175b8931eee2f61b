//! Line-oriented event logs: `time,symbol` per line, `#` starts a comment line.

use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::InputError;
use crate::sequence::{Alphabet, Event, EventSequence};

fn err(line: usize, column: usize, message: impl Into<String>) -> InputError {
    InputError { line, column, message: message.into() }
}

/// Parses an event log held in memory.
pub fn parse_events(text: &str) -> Result<EventSequence, InputError> {
    parse_lines(text.lines().map(|l| Ok(l.to_owned())))
}

/// Parses an event log from a reader (e.g. stdin).
pub fn read_events<R: BufRead>(reader: R) -> Result<EventSequence, InputError> {
    parse_lines(reader.lines())
}

fn parse_lines<I>(lines: I) -> Result<EventSequence, InputError>
where
    I: Iterator<Item = std::io::Result<String>>,
{
    let mut alphabet = Alphabet::new();
    let mut events: Vec<Event> = Vec::new();
    for (i, line) in lines.enumerate() {
        let no = i + 1;
        let line = line.map_err(|e| err(no, 1, format!("read failed: {e}")))?;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let Some((time_text, symbol_text)) = body.split_once(',') else {
            return Err(err(no, indent + 1, "expected \"time,symbol\""));
        };
        let time: i64 = time_text
            .trim()
            .parse()
            .map_err(|_| err(no, indent + 1, format!("invalid timestamp {:?}", time_text.trim())))?;
        let symbol_col = indent + time_text.len() + 2;
        let symbol = symbol_text.trim();
        if symbol.is_empty() {
            return Err(err(no, symbol_col, "empty event type"));
        }
        if symbol.chars().any(|c| c.is_whitespace() || c == ',' || c == '#') {
            return Err(err(no, symbol_col, format!("invalid event type {symbol:?}")));
        }
        if time < 1 {
            return Err(err(no, indent + 1, "non-positive timestamp"));
        }
        if events.last().is_some_and(|e| e.time > time) {
            return Err(err(no, indent + 1, "decreasing timestamp"));
        }
        events.push(Event::new(alphabet.intern(symbol), time));
    }
    Ok(EventSequence::new(events, alphabet).expect("validated while parsing"))
}

/// Canonical rendering: one `time,symbol` line per event.
pub fn write_events(d: &EventSequence) -> String {
    let mut out = String::with_capacity(d.len() * 6);
    for e in d.events() {
        writeln!(out, "{},{}", e.time, d.alphabet().name(e.event_type)).expect("writing to a String");
    }
    out
}
