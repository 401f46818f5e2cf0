//! Server side: one hidden graph per session.

use std::io::{BufRead, BufReader, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::thread;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{sum_distinct_labels, DiffusionPair, Graph, LabelScheme};
use crate::iso::is_isomorphic;
use crate::spectra::simulate_spectrum;

use super::protocol::{Direction, GameMessage, Outcome, Scheme, Transcript};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ServerConfig {
    pub r_min: i64,
    pub r_max: i64,
    pub precision_bits: u32,
    /// Seeds the private order in which labels are attached to edges.
    pub seed: u64,
}

impl Default for ServerConfig {
    fn default() -> Self {
        Self {
            r_min: 0,
            r_max: 1,
            precision_bits: 512,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    AwaitingDelta,
    Playing,
    Closed,
}

/// State of one game.
#[derive(Clone, Debug)]
pub struct Session {
    id: u64,
    hidden: Graph,
    config: ServerConfig,
    greeted: bool,
    phase: Phase,
    pair: Option<DiffusionPair>,
    transcript: Transcript,
}

impl Session {
    pub fn new(id: u64, hidden: Graph, config: ServerConfig) -> Result<Self> {
        if !hidden.is_connected() {
            return Err(Error::InvalidArgument(
                "hidden graph must be connected".into(),
            ));
        }
        if config.r_min > config.r_max {
            return Err(Error::InvalidArgument("empty level window".into()));
        }
        Ok(Self {
            id,
            hidden,
            config,
            greeted: false,
            phase: Phase::AwaitingDelta,
            pair: None,
            transcript: Transcript::default(),
        })
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    /// Processes one client message and returns the reply.
    pub fn handle(&mut self, msg: GameMessage) -> GameMessage {
        self.transcript.push(Direction::Client, msg.clone());
        let reply = self.respond(msg).unwrap_or_else(|e| GameMessage::Error {
            message: e.to_string(),
        });
        self.transcript.push(Direction::Server, reply.clone());
        reply
    }

    fn respond(&mut self, msg: GameMessage) -> Result<GameMessage> {
        let protocol = |s: &str| Err(Error::Protocol(s.into()));
        if self.phase == Phase::Closed {
            return protocol("session closed");
        }
        match msg {
            GameMessage::Hello {} => {
                if self.greeted {
                    return protocol("already greeted");
                }
                self.greeted = true;
                Ok(GameMessage::Welcome {
                    session_id: self.id,
                })
            }
            _ if !self.greeted => protocol("say hello first"),
            GameMessage::ChooseDelta { labels, scheme } => {
                if self.phase != Phase::AwaitingDelta {
                    return protocol("delta already fixed");
                }
                let m = self.hidden.num_edges();
                let mut labels = match (labels, scheme) {
                    (Some(ls), None) => {
                        if ls.len() != m {
                            return Err(Error::Protocol(format!(
                                "got {} labels for {m} edges",
                                ls.len()
                            )));
                        }
                        ls
                    }
                    (None, Some(Scheme::PowersOfTwo)) => {
                        sum_distinct_labels(m, &LabelScheme::PowersOfTwo)?
                    }
                    _ => return protocol("give exactly one of labels or scheme"),
                };
                let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
                labels.shuffle(&mut rng);
                let pair = DiffusionPair::from_graph(&self.hidden, &labels)?;
                self.pair = Some(pair);
                self.phase = Phase::Playing;
                Ok(GameMessage::DeltaAck { edge_count: m })
            }
            GameMessage::ChoosePrime { q } => {
                let Some(pair) = &self.pair else {
                    return protocol("delta not fixed");
                };
                if !is_prime_power(q) {
                    return Err(Error::Protocol(format!("{q} is not a prime power")));
                }
                let c = &self.config;
                let sample = simulate_spectrum(pair, q, c.r_min, c.r_max, c.precision_bits)?;
                Ok(GameMessage::spectrum(&sample))
            }
            GameMessage::Submit { n, edges } => {
                self.phase = Phase::Closed;
                let won = Graph::new(n, edges).is_ok_and(|g| is_isomorphic(&g, &self.hidden));
                Ok(GameMessage::Verdict {
                    result: if won { Outcome::Win } else { Outcome::Lose },
                })
            }
            other => Err(Error::Protocol(format!(
                "unexpected {} from client",
                other.kind()
            ))),
        }
    }
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut x = q;
            while x.is_multiple_of(p) {
                x /= p;
            }
            return x == 1;
        }
        p += 1;
    }
    true
}

/// Accepts connections and plays one session per connection, each on its
/// own thread. Stops after `max_sessions` connections when given.
pub fn serve_game(
    listener: TcpListener,
    hidden: Graph,
    config: ServerConfig,
    max_sessions: Option<usize>,
) -> Result<()> {
    Session::new(0, hidden.clone(), config.clone())?;
    let counter = Arc::new(AtomicU64::new(1));
    let mut handles = Vec::new();
    for (k, stream) in listener.incoming().enumerate() {
        let stream = stream?;
        let id = counter.fetch_add(1, Ordering::SeqCst);
        let session = Session::new(id, hidden.clone(), config.clone())?;
        handles.push(thread::spawn(move || serve_connection(stream, session)));
        if max_sessions.is_some_and(|m| k + 1 >= m) {
            break;
        }
    }
    for h in handles {
        h.join()
            .map_err(|_| Error::Io("session thread panicked".into()))??;
    }
    Ok(())
}

/// Runs a session over one stream until it closes; returns its transcript.
pub fn serve_connection(stream: TcpStream, mut session: Session) -> Result<Transcript> {
    let mut writer = stream.try_clone()?;
    let reader = BufReader::new(stream);
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let reply = match GameMessage::from_line(&line) {
            Ok(msg) => session.handle(msg),
            Err(e) => GameMessage::Error {
                message: e.to_string(),
            },
        };
        writer.write_all(reply.to_line().as_bytes())?;
        writer.write_all(b"\n")?;
        writer.flush()?;
        if session.phase() == Phase::Closed {
            break;
        }
    }
    Ok(session.transcript().clone())
}
