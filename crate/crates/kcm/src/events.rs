//! Binary trajectory log: little-endian records (time f64, site u64,
//! old u8, new u8) after a 8-byte header, for exact replay.

use crate::error::SimError;

const MAGIC: [u8; 4] = *b"FAEV";
const VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub time: f64,
    pub site: u64,
    pub old: u8,
    pub new: u8,
}

pub fn write_event_log(events: &[Event]) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + events.len() * 18);
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    for e in events {
        out.extend_from_slice(&e.time.to_le_bytes());
        out.extend_from_slice(&e.site.to_le_bytes());
        out.push(e.old);
        out.push(e.new);
    }
    out
}

pub fn read_event_log(bytes: &[u8]) -> Result<Vec<Event>, SimError> {
    if bytes.len() < 8 || bytes[0..4] != MAGIC {
        return Err(SimError::BadEventLog("missing header".into()));
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(SimError::BadEventLog(format!("version {version}")));
    }
    let payload = &bytes[8..];
    if payload.len() % 18 != 0 {
        return Err(SimError::BadEventLog("truncated record".into()));
    }
    let mut out = Vec::with_capacity(payload.len() / 18);
    for rec in payload.chunks_exact(18) {
        out.push(Event {
            time: f64::from_le_bytes(rec[0..8].try_into().unwrap()),
            site: u64::from_le_bytes(rec[8..16].try_into().unwrap()),
            old: rec[16],
            new: rec[17],
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let events = vec![
            Event {
                time: 0.25,
                site: 3,
                old: 1,
                new: 0,
            },
            Event {
                time: 1.5,
                site: 9,
                old: 0,
                new: 1,
            },
        ];
        let bytes = write_event_log(&events);
        assert_eq!(read_event_log(&bytes).unwrap(), events);
    }

    #[test]
    fn corrupt_rejected() {
        assert!(read_event_log(b"xxxx").is_err());
        let mut bytes = write_event_log(&[]);
        bytes.push(0);
        assert!(read_event_log(&bytes).is_err());
    }
}
