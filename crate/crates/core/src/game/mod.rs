//! The recovery game. A server hides a connected graph; the player fixes an
//! edge labelling once, then asks for spectra at primes of their choice and
//! finally submits a graph, winning iff it is isomorphic to the hidden one.
//!
//! Messages are JSON objects, one per line, tagged by `type`.

mod protocol;
mod server;
mod solver;
mod transport;

pub use protocol::{Direction, GameMessage, Outcome, Scheme, Transcript, TranscriptEntry};
pub use server::{is_prime_power, serve_connection, serve_game, Phase, ServerConfig, Session};
pub use solver::{replay_transcript, solve_game, SolveReport, SolverConfig};
pub use transport::{Loopback, TcpTransport, Transport};
