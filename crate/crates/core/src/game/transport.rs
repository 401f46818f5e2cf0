//! Client-side transports.

use std::io::{BufRead, BufReader, Write};
use std::net::{TcpStream, ToSocketAddrs};

use crate::error::{Error, Result};

use super::protocol::GameMessage;
use super::server::Session;

pub trait Transport {
    fn send(&mut self, msg: &GameMessage) -> Result<()>;
    fn recv(&mut self) -> Result<GameMessage>;

    fn request(&mut self, msg: &GameMessage) -> Result<GameMessage> {
        self.send(msg)?;
        self.recv()
    }
}

/// Talks to an in-process [`Session`].
pub struct Loopback {
    session: Session,
    pending: Option<GameMessage>,
}

impl Loopback {
    pub fn new(session: Session) -> Self {
        Self {
            session,
            pending: None,
        }
    }

    pub fn session(&self) -> &Session {
        &self.session
    }
}

impl Transport for Loopback {
    fn send(&mut self, msg: &GameMessage) -> Result<()> {
        // round-trip through the wire format
        let wire = GameMessage::from_line(&msg.to_line())?;
        let reply = self.session.handle(wire);
        self.pending = Some(GameMessage::from_line(&reply.to_line())?);
        Ok(())
    }

    fn recv(&mut self) -> Result<GameMessage> {
        self.pending
            .take()
            .ok_or_else(|| Error::Protocol("no reply pending".into()))
    }
}

/// Line-delimited JSON over TCP.
pub struct TcpTransport {
    reader: BufReader<TcpStream>,
    writer: TcpStream,
}

impl TcpTransport {
    pub fn connect(addr: impl ToSocketAddrs) -> Result<Self> {
        let stream = TcpStream::connect(addr)?;
        Ok(Self {
            writer: stream.try_clone()?,
            reader: BufReader::new(stream),
        })
    }
}

impl Transport for TcpTransport {
    fn send(&mut self, msg: &GameMessage) -> Result<()> {
        self.writer.write_all(msg.to_line().as_bytes())?;
        self.writer.write_all(b"\n")?;
        self.writer.flush()?;
        Ok(())
    }

    fn recv(&mut self) -> Result<GameMessage> {
        let mut line = String::new();
        if self.reader.read_line(&mut line)? == 0 {
            return Err(Error::Protocol("server closed the connection".into()));
        }
        GameMessage::from_line(&line)
    }
}
