//! Client strategy: fix power-of-two labels, buy spectra at escalating
//! primes, recover `P`, rebuild the graph and submit it.

use crate::error::{Error, Result};
use crate::graph::{sum_distinct_labels, Graph, LabelScheme};
use crate::reconstruct::reconstruct_from_polynomial;
use crate::spectra::{
    cluster_and_assign, recover_from_level_zero, recover_spectral_poly, ClusterAssignment,
    SpectrumSample,
};

use super::protocol::{Direction, GameMessage, Outcome, Scheme, Transcript};
use super::server::{ServerConfig, Session};
use super::transport::Transport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Primes to request, in order.
    pub primes: Vec<u64>,
    /// Maximum number of `choose_prime` requests.
    pub budget: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            primes: vec![101, 1009, 10007],
            budget: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub session_id: u64,
    pub edge_count: usize,
    pub primes_used: Vec<u64>,
    /// Graph that was submitted, if any.
    pub submitted: Option<Graph>,
    /// `None` when the solver stopped without submitting.
    pub outcome: Option<Outcome>,
    pub failure: Option<String>,
    pub transcript: Transcript,
}

impl SolveReport {
    pub fn won(&self) -> bool {
        self.outcome == Some(Outcome::Win)
    }
}

struct Client<'a, T: Transport> {
    transport: &'a mut T,
    transcript: Transcript,
}

impl<T: Transport> Client<'_, T> {
    fn request(&mut self, msg: GameMessage) -> Result<GameMessage> {
        self.transcript.push(Direction::Client, msg.clone());
        let reply = self.transport.request(&msg)?;
        self.transcript.push(Direction::Server, reply.clone());
        Ok(reply)
    }
}

fn unexpected(reply: &GameMessage) -> Error {
    match reply {
        GameMessage::Error { message } => Error::Protocol(message.clone()),
        other => Error::Protocol(format!("unexpected {}", other.kind())),
    }
}

pub fn solve_game<T: Transport>(transport: &mut T, config: &SolverConfig) -> Result<SolveReport> {
    let mut client = Client {
        transport,
        transcript: Transcript::default(),
    };
    let session_id = match client.request(GameMessage::Hello {})? {
        GameMessage::Welcome { session_id } => session_id,
        other => return Err(unexpected(&other)),
    };
    let edge_count = match client.request(GameMessage::ChooseDelta {
        labels: None,
        scheme: Some(Scheme::PowersOfTwo),
    })? {
        GameMessage::DeltaAck { edge_count } => edge_count,
        other => return Err(unexpected(&other)),
    };
    let mut labels = sum_distinct_labels(edge_count, &LabelScheme::PowersOfTwo)?;
    labels.sort_unstable();
    let degree_bound = labels.iter().sum::<u64>() as usize;

    let mut report = SolveReport {
        session_id,
        edge_count,
        primes_used: Vec::new(),
        submitted: None,
        outcome: None,
        failure: None,
        transcript: Transcript::default(),
    };
    let mut samples: Vec<SpectrumSample> = Vec::new();
    let mut last_error = String::from("no spectra requested");
    let mut found = None;
    for &q in config.primes.iter().take(config.budget) {
        report.primes_used.push(q);
        match client.request(GameMessage::ChoosePrime { q })? {
            reply @ GameMessage::Spectrum { .. } => samples.push(reply.to_sample()?),
            GameMessage::Error { message } => {
                last_error = message;
                continue;
            }
            other => return Err(unexpected(&other)),
        }
        if samples.len() < 2 {
            last_error = "one spectrum cannot be split into levels".into();
            continue;
        }
        match attempt(&samples, degree_bound, &labels) {
            Ok(g) => {
                found = Some(g);
                break;
            }
            Err(e) => last_error = e.to_string(),
        }
    }

    match found {
        Some(g) => {
            let reply = client.request(GameMessage::Submit {
                n: g.n(),
                edges: g.edges().to_vec(),
            })?;
            match reply {
                GameMessage::Verdict { result } => report.outcome = Some(result),
                other => return Err(unexpected(&other)),
            }
            report.submitted = Some(g);
        }
        None => report.failure = Some(last_error),
    }
    report.transcript = client.transcript;
    Ok(report)
}

/// Tries every sample's level assignment, largest prime first.
fn attempt(samples: &[SpectrumSample], degree_bound: usize, labels: &[u64]) -> Result<Graph> {
    let assignments = cluster_and_assign(samples)?;
    let mut order: Vec<&ClusterAssignment> = assignments.iter().collect();
    order.sort_by_key(|a| std::cmp::Reverse(a.q));
    let mut last = Error::GaveUp("no assignment".into());
    for a in order {
        match rebuild(a, degree_bound, labels) {
            Ok(g) => return Ok(g),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn rebuild(a: &ClusterAssignment, degree_bound: usize, labels: &[u64]) -> Result<Graph> {
    let recovered = if a.levels.len() > degree_bound {
        recover_spectral_poly(a, a.q, degree_bound)?
    } else {
        recover_from_level_zero(a, a.q)?
    };
    let pair = reconstruct_from_polynomial(&recovered.poly)?;
    let mut got = pair.labels().to_vec();
    got.sort_unstable();
    if got != labels {
        return Err(Error::GaveUp(
            "rebuilt labels differ from the chosen ones".into(),
        ));
    }
    Ok(pair.graph().clone())
}

/// Feeds the client side of `transcript` to a fresh session and checks that
/// every server reply matches the recorded one.
pub fn replay_transcript(
    transcript: &Transcript,
    hidden: &Graph,
    config: &ServerConfig,
) -> Result<bool> {
    let mut session = Session::new(0, hidden.clone(), config.clone())?;
    let mut entries = transcript.entries.iter();
    while let Some(e) = entries.next() {
        if e.from != Direction::Client {
            return Ok(false);
        }
        let reply = session.handle(e.message.clone());
        match entries.next() {
            Some(r) if r.from == Direction::Server && same_reply(&r.message, &reply) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

// session ids are assigned by the server and do not affect play
fn same_reply(a: &GameMessage, b: &GameMessage) -> bool {
    match (a, b) {
        (GameMessage::Welcome { .. }, GameMessage::Welcome { .. }) => true,
        _ => a == b,
    }
}
