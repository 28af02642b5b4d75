//! Compact binary records for messages.
//!
//! A record is one protocol id byte followed by the payload:
//!
//! * symbol: LEB128 varint of the value;
//! * bit vector: varint bit length, then `⌈k/8⌉` bytes, bit `j` stored at
//!   byte `j / 8`, position `j % 8` (little-endian bit order);
//! * subset: varint count, then the sorted members as varints;
//! * split: varint repetition count `T`, then `T` base payloads.
//!
//! The format is stable within one crate version only.

use super::{BitVectorMessage, SubsetMessage, SymbolMessage};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum BaseProtocol {
    Krr = 1,
    Rappor = 2,
    SubsetSelection = 3,
    Hadamard = 4,
    ProjectiveGeometry = 5,
    Intersection = 6,
}

/// Record tag: base mechanism plus whether it runs under `split(<base>)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProtocolId {
    pub base: BaseProtocol,
    pub split: bool,
}

const SPLIT_FLAG: u8 = 0x80;

impl ProtocolId {
    pub const fn plain(base: BaseProtocol) -> Self {
        Self { base, split: false }
    }

    pub const fn split(base: BaseProtocol) -> Self {
        Self { base, split: true }
    }

    pub fn code(&self) -> u8 {
        self.base as u8 | if self.split { SPLIT_FLAG } else { 0 }
    }

    pub fn from_code(code: u8) -> Result<Self> {
        let base = match code & !SPLIT_FLAG {
            1 => BaseProtocol::Krr,
            2 => BaseProtocol::Rappor,
            3 => BaseProtocol::SubsetSelection,
            4 => BaseProtocol::Hadamard,
            5 => BaseProtocol::ProjectiveGeometry,
            6 => BaseProtocol::Intersection,
            _ => return Err(Error::Wire(format!("unknown protocol id {code:#04x}"))),
        };
        Ok(Self {
            base,
            split: code & SPLIT_FLAG != 0,
        })
    }
}

pub fn write_varint(out: &mut Vec<u8>, mut v: u64) {
    while v >= 0x80 {
        out.push((v as u8 & 0x7f) | 0x80);
        v >>= 7;
    }
    out.push(v as u8);
}

pub fn read_varint(input: &mut &[u8]) -> Result<u64> {
    let mut value = 0u64;
    for shift in (0..64).step_by(7) {
        let (&byte, rest) = input
            .split_first()
            .ok_or_else(|| Error::Wire("truncated varint".into()))?;
        *input = rest;
        value |= ((byte & 0x7f) as u64) << shift;
        if byte & 0x80 == 0 {
            return Ok(value);
        }
    }
    Err(Error::Wire("varint longer than 10 bytes".into()))
}

fn take<'a>(input: &mut &'a [u8], n: usize) -> Result<&'a [u8]> {
    if input.len() < n {
        return Err(Error::Wire(format!("expected {n} bytes, {} left", input.len())));
    }
    let (head, rest) = input.split_at(n);
    *input = rest;
    Ok(head)
}

pub trait WireMessage: Sized {
    fn encode_payload(&self, out: &mut Vec<u8>);
    fn decode_payload(input: &mut &[u8]) -> Result<Self>;
}

impl WireMessage for SymbolMessage {
    fn encode_payload(&self, out: &mut Vec<u8>) {
        write_varint(out, self.0 as u64);
    }

    fn decode_payload(input: &mut &[u8]) -> Result<Self> {
        Ok(SymbolMessage(read_varint(input)? as usize))
    }
}

impl WireMessage for BitVectorMessage {
    fn encode_payload(&self, out: &mut Vec<u8>) {
        write_varint(out, self.len() as u64);
        let bytes = self.len().div_ceil(8);
        out.extend(
            self.words()
                .iter()
                .flat_map(|w| w.to_le_bytes())
                .take(bytes),
        );
    }

    fn decode_payload(input: &mut &[u8]) -> Result<Self> {
        let len = read_varint(input)? as usize;
        let bytes = take(input, len.div_ceil(8))?;
        if !len.is_multiple_of(8) && bytes[bytes.len() - 1] >> (len % 8) != 0 {
            return Err(Error::Wire("bits set beyond vector length".into()));
        }
        let words = bytes
            .chunks(8)
            .map(|chunk| {
                let mut buf = [0u8; 8];
                buf[..chunk.len()].copy_from_slice(chunk);
                u64::from_le_bytes(buf)
            })
            .collect();
        Ok(BitVectorMessage::from_words(words, len))
    }
}

impl WireMessage for SubsetMessage {
    fn encode_payload(&self, out: &mut Vec<u8>) {
        write_varint(out, self.members().len() as u64);
        for &m in self.members() {
            write_varint(out, m as u64);
        }
    }

    fn decode_payload(input: &mut &[u8]) -> Result<Self> {
        let count = read_varint(input)? as usize;
        let members = (0..count)
            .map(|_| {
                let v = read_varint(input)?;
                u32::try_from(v).map_err(|_| Error::Wire(format!("member {v} too large")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Wire("subset members not strictly increasing".into()));
        }
        SubsetMessage::new(members)
    }
}

impl<M: WireMessage> WireMessage for Vec<M> {
    fn encode_payload(&self, out: &mut Vec<u8>) {
        write_varint(out, self.len() as u64);
        for m in self {
            m.encode_payload(out);
        }
    }

    fn decode_payload(input: &mut &[u8]) -> Result<Self> {
        let count = read_varint(input)? as usize;
        (0..count).map(|_| M::decode_payload(input)).collect()
    }
}

/// Appends one record.
pub fn encode_record<M: WireMessage>(id: ProtocolId, message: &M, out: &mut Vec<u8>) {
    out.push(id.code());
    message.encode_payload(out);
}

/// Reads one record, checking the protocol id.
pub fn decode_record<M: WireMessage>(expected: ProtocolId, input: &mut &[u8]) -> Result<M> {
    let (&code, rest) = input
        .split_first()
        .ok_or_else(|| Error::Wire("empty record".into()))?;
    if code != expected.code() {
        return Err(Error::Wire(format!(
            "protocol id {code:#04x}, expected {:#04x}",
            expected.code()
        )));
    }
    *input = rest;
    M::decode_payload(input)
}

/// Concatenated records for a batch of messages.
pub fn encode_batch<M: WireMessage>(id: ProtocolId, messages: &[M]) -> Vec<u8> {
    let mut out = Vec::new();
    for m in messages {
        encode_record(id, m, &mut out);
    }
    out
}

pub fn decode_batch<M: WireMessage>(id: ProtocolId, mut input: &[u8]) -> Result<Vec<M>> {
    let mut out = Vec::new();
    while !input.is_empty() {
        out.push(decode_record(id, &mut input)?);
    }
    Ok(out)
}
