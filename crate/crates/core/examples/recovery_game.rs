// Plays the recovery game twice: in process, then over TCP on an ephemeral
// local port.

use std::net::TcpListener;
use std::thread;

use spectral_curves::game::{
    serve_game, solve_game, Loopback, ServerConfig, Session, SolverConfig, TcpTransport,
};
use spectral_curves::{Graph, Result};

pub fn run_example() -> Result<()> {
    let hidden = Graph::new(5, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5)])?;

    let session = Session::new(1, hidden.clone(), ServerConfig::default())?;
    let report = solve_game(&mut Loopback::new(session), &SolverConfig::default())?;
    println!(
        "loopback: {:?} using primes {:?}",
        report.outcome, report.primes_used
    );
    for entry in &report.transcript.entries {
        println!("  {:?} {}", entry.from, entry.message.kind());
    }

    let listener = TcpListener::bind("127.0.0.1:0")?;
    let addr = listener.local_addr()?;
    let server =
        thread::spawn(move || serve_game(listener, hidden, ServerConfig::default(), Some(1)));
    let report = solve_game(&mut TcpTransport::connect(addr)?, &SolverConfig::default())?;
    server.join().expect("server thread")?;
    println!(
        "tcp: {:?}, submitted {:?}",
        report.outcome,
        report.submitted.map(|g| g.edges().to_vec())
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
