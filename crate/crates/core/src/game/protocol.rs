//! Wire messages and transcripts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::SpectrumSample;

/// Label generation rule the server applies to its own edge order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    PowersOfTwo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Win,
    Lose,
}

/// One protocol message; serialized as a JSON object tagged by `type`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GameMessage {
    Hello {},
    Welcome {
        session_id: u64,
    },
    ChooseDelta {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<u64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scheme: Option<Scheme>,
    },
    DeltaAck {
        edge_count: usize,
    },
    ChoosePrime {
        q: u64,
    },
    Spectrum {
        q: u64,
        r_min: i64,
        r_max: i64,
        precision_bits: u32,
        values: Vec<String>,
    },
    Submit {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
    Verdict {
        result: Outcome,
    },
    Error {
        message: String,
    },
}

impl GameMessage {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("messages always serialize")
    }

    pub fn from_line(line: &str) -> Result<Self> {
        serde_json::from_str(line.trim()).map_err(|e| Error::Protocol(format!("bad message: {e}")))
    }

    pub fn spectrum(sample: &SpectrumSample) -> Self {
        let text = sample.to_text();
        GameMessage::Spectrum {
            q: sample.q,
            r_min: sample.r_min,
            r_max: sample.r_max,
            precision_bits: sample.precision_bits,
            values: text.lines().skip(1).map(str::to_owned).collect(),
        }
    }

    /// The sample carried by a `spectrum` message.
    pub fn to_sample(&self) -> Result<SpectrumSample> {
        match self {
            GameMessage::Spectrum {
                q,
                r_min,
                r_max,
                precision_bits,
                values,
            } => {
                let mut text =
                    format!("spectrum q={q} rmin={r_min} rmax={r_max} prec={precision_bits}\n");
                for v in values {
                    text.push_str(v);
                    text.push('\n');
                }
                SpectrumSample::from_text(&text)
            }
            other => Err(Error::Protocol(format!(
                "expected spectrum, got {}",
                other.kind()
            ))),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GameMessage::Hello {} => "hello",
            GameMessage::Welcome { .. } => "welcome",
            GameMessage::ChooseDelta { .. } => "choose_delta",
            GameMessage::DeltaAck { .. } => "delta_ack",
            GameMessage::ChoosePrime { .. } => "choose_prime",
            GameMessage::Spectrum { .. } => "spectrum",
            GameMessage::Submit { .. } => "submit",
            GameMessage::Verdict { .. } => "verdict",
            GameMessage::Error { .. } => "error",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Client,
    Server,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub from: Direction,
    pub message: GameMessage,
}

/// Ordered record of a session, one JSON object per line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transcript {
    pub entries: Vec<TranscriptEntry>,
}

impl Transcript {
    pub fn push(&mut self, from: Direction, message: GameMessage) {
        self.entries.push(TranscriptEntry { from, message });
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("entries always serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (k, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            entries.push(serde_json::from_str(line).map_err(|e| Error::Parse {
                line: k + 1,
                msg: e.to_string(),
            })?);
        }
        Ok(Self { entries })
    }

    /// Messages sent by the client, in order.
    pub fn client_messages(&self) -> impl Iterator<Item = &GameMessage> {
        self.entries
            .iter()
            .filter(|e| e.from == Direction::Client)
            .map(|e| &e.message)
    }
}
