use std::net::TcpListener;
use std::thread;

use spectral_curves::catalog::isospectral_graphs;
use spectral_curves::game::{
    replay_transcript, serve_game, solve_game, GameMessage, Loopback, Outcome, ServerConfig,
    Session, SolverConfig, TcpTransport, Transport,
};
use spectral_curves::Graph;

#[test]
fn triangle_with_wide_window() {
    let config = ServerConfig {
        r_min: -7,
        r_max: 1,
        ..ServerConfig::default()
    };
    let session = Session::new(1, Graph::complete(3), config).unwrap();
    let report = solve_game(&mut Loopback::new(session), &SolverConfig::default()).unwrap();
    assert!(report.won());
    assert_eq!(report.primes_used, vec![101, 1009]);
}

#[test]
fn path_is_recovered() {
    let session = Session::new(1, Graph::path(4), ServerConfig::default()).unwrap();
    let report = solve_game(&mut Loopback::new(session), &SolverConfig::default()).unwrap();
    assert!(report.won());
}

#[test]
fn isospectral_submission_loses() {
    let (left, right) = isospectral_graphs();
    let mut session = Session::new(1, left, ServerConfig::default()).unwrap();
    session.handle(GameMessage::Hello {});
    let verdict = session.handle(GameMessage::Submit {
        n: right.n(),
        edges: right.edges().to_vec(),
    });
    assert_eq!(
        verdict,
        GameMessage::Verdict {
            result: Outcome::Lose
        }
    );
}

#[test]
fn tiny_budget_gives_up() {
    let session = Session::new(1, Graph::complete(3), ServerConfig::default()).unwrap();
    let solver = SolverConfig {
        primes: vec![2],
        budget: 1,
    };
    let report = solve_game(&mut Loopback::new(session), &solver).unwrap();
    assert_eq!(report.outcome, None);
    assert!(report.submitted.is_none());
}

#[test]
fn spectra_depend_only_on_pair_and_prime() {
    let play = |seed, id| {
        let config = ServerConfig {
            seed,
            ..ServerConfig::default()
        };
        let mut t = Loopback::new(Session::new(id, Graph::cycle(4), config).unwrap());
        t.request(&GameMessage::Hello {}).unwrap();
        t.request(&GameMessage::ChooseDelta {
            labels: Some(vec![1, 2, 4, 8]),
            scheme: None,
        })
        .unwrap();
        t.request(&GameMessage::ChoosePrime { q: 11 }).unwrap()
    };
    assert_eq!(play(3, 1), play(3, 2));
    assert!(matches!(play(3, 1), GameMessage::Spectrum { .. }));
}

#[test]
fn concurrent_tcp_sessions() {
    let hidden = Graph::new(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 3)]).unwrap();
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let server = {
        let hidden = hidden.clone();
        thread::spawn(move || serve_game(listener, hidden, ServerConfig::default(), Some(3)))
    };
    let clients: Vec<_> = (0..3)
        .map(|_| {
            thread::spawn(move || {
                let mut t = TcpTransport::connect(addr).unwrap();
                solve_game(&mut t, &SolverConfig::default()).unwrap()
            })
        })
        .collect();
    for c in clients {
        let report = c.join().unwrap();
        assert!(report.won());
        assert!(replay_transcript(&report.transcript, &hidden, &ServerConfig::default()).unwrap());
    }
    server.join().unwrap().unwrap();
}

#[test]
fn malformed_line_gets_error_reply() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let server = thread::spawn(move || {
        serve_game(
            listener,
            Graph::complete(3),
            ServerConfig::default(),
            Some(1),
        )
    });
    let mut t = TcpTransport::connect(addr).unwrap();
    t.send(&GameMessage::ChoosePrime { q: 7 }).unwrap();
    assert!(matches!(t.recv().unwrap(), GameMessage::Error { .. }));
    t.send(&GameMessage::Hello {}).unwrap();
    assert!(matches!(t.recv().unwrap(), GameMessage::Welcome { .. }));
    t.send(&GameMessage::Submit {
        n: 3,
        edges: vec![(1, 2), (2, 3)],
    })
    .unwrap();
    assert_eq!(
        t.recv().unwrap(),
        GameMessage::Verdict {
            result: Outcome::Lose
        }
    );
    server.join().unwrap().unwrap();
}
