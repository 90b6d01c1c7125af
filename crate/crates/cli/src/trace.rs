//! Line-oriented trace format: `<stream_id><TAB><symbol>`.
//!
//! The symbol is either a single raw byte or a `\xHH` escape. A single space
//! is accepted in place of the tab. Blank lines and lines starting with `#`
//! carry no event.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEvent {
    pub stream_id: u64,
    pub symbol: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceError {
    MissingSeparator,
    BadStreamId(String),
    BadSymbol(String),
}

impl fmt::Display for TraceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceError::MissingSeparator => f.write_str("expected `<stream_id><TAB><symbol>`"),
            TraceError::BadStreamId(s) => write!(f, "invalid stream id {s:?}"),
            TraceError::BadSymbol(s) => {
                write!(f, "invalid symbol {s:?} (one byte or a \\xHH escape)")
            }
        }
    }
}

impl std::error::Error for TraceError {}

/// Parses one line without its terminating newline. `Ok(None)` for blank
/// and comment lines.
pub fn parse_line(line: &[u8]) -> Result<Option<TraceEvent>, TraceError> {
    let line = line.strip_suffix(b"\r").unwrap_or(line);
    if line.is_empty() || line[0] == b'#' {
        return Ok(None);
    }
    let sep = line
        .iter()
        .position(|&b| b == b'\t')
        .or_else(|| line.iter().position(|&b| b == b' '))
        .ok_or(TraceError::MissingSeparator)?;
    let (id, sym) = (&line[..sep], &line[sep + 1..]);
    let lossy = |b: &[u8]| String::from_utf8_lossy(b).into_owned();
    if id.is_empty() || !id.iter().all(u8::is_ascii_digit) {
        return Err(TraceError::BadStreamId(lossy(id)));
    }
    let stream_id = std::str::from_utf8(id)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| TraceError::BadStreamId(lossy(id)))?;
    let symbol = match sym {
        [b] => *b,
        [b'\\', b'x', hi, lo] => std::str::from_utf8(&[*hi, *lo])
            .ok()
            .and_then(|s| u8::from_str_radix(s, 16).ok())
            .ok_or_else(|| TraceError::BadSymbol(lossy(sym)))?,
        _ => return Err(TraceError::BadSymbol(lossy(sym))),
    };
    Ok(Some(TraceEvent { stream_id, symbol }))
}

/// Renders an event so that [`parse_line`] reads it back unchanged.
pub fn format_event(ev: TraceEvent) -> String {
    let sym = ev.symbol;
    if sym.is_ascii_graphic() {
        format!("{}\t{}", ev.stream_id, sym as char)
    } else {
        format!("{}\t\\x{:02x}", ev.stream_id, sym)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(stream_id: u64, symbol: u8) -> Option<TraceEvent> {
        Some(TraceEvent { stream_id, symbol })
    }

    #[test]
    fn accepted_forms() {
        assert_eq!(parse_line(b"0\ta"), Ok(ev(0, b'a')));
        assert_eq!(parse_line(b"12 b"), Ok(ev(12, b'b')));
        assert_eq!(parse_line(b"3\t\\x0A"), Ok(ev(3, 10)));
        assert_eq!(parse_line(b"3\t\\xff\r"), Ok(ev(3, 255)));
        assert_eq!(parse_line(b"1\t "), Ok(ev(1, b' ')));
        assert_eq!(parse_line(b"1\t#"), Ok(ev(1, b'#')));
        assert_eq!(parse_line(b"1\t\\"), Ok(ev(1, b'\\')));
        assert_eq!(parse_line(&[b'0', b'\t', 0xe9]), Ok(ev(0, 0xe9)));
        assert_eq!(parse_line(b""), Ok(None));
        assert_eq!(parse_line(b"# args: --mode exact"), Ok(None));
    }

    #[test]
    fn rejected_forms() {
        assert_eq!(parse_line(b"0"), Err(TraceError::MissingSeparator));
        assert!(matches!(
            parse_line(b"x\ta"),
            Err(TraceError::BadStreamId(_))
        ));
        assert!(matches!(
            parse_line(b"-1\ta"),
            Err(TraceError::BadStreamId(_))
        ));
        assert!(matches!(
            parse_line(b"99999999999999999999\ta"),
            Err(TraceError::BadStreamId(_))
        ));
        assert!(matches!(
            parse_line(b"0\tab"),
            Err(TraceError::BadSymbol(_))
        ));
        assert!(matches!(parse_line(b"0\t"), Err(TraceError::BadSymbol(_))));
        assert!(matches!(
            parse_line(b"0\t\\xzz"),
            Err(TraceError::BadSymbol(_))
        ));
    }

    #[test]
    fn format_round_trips_every_byte() {
        for symbol in 0..=255u8 {
            let e = TraceEvent {
                stream_id: 7,
                symbol,
            };
            assert_eq!(parse_line(format_event(e).as_bytes()), Ok(Some(e)));
        }
    }
}
