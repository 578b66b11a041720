//! Report destination: standard output by default, a file with `--output`.

use std::fs::File;
use std::io::{self, BufWriter, Stdout, Write};
use std::path::Path;

pub enum Sink {
    Stdout(Stdout),
    File(BufWriter<File>),
}

impl Sink {
    pub fn create(path: Option<&Path>) -> io::Result<Self> {
        Ok(match path {
            None => Sink::Stdout(io::stdout()),
            Some(path) => Sink::File(BufWriter::new(File::create(path)?)),
        })
    }

    pub fn finish(&mut self) -> io::Result<()> {
        self.flush()
    }
}

impl Write for Sink {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        match self {
            Sink::Stdout(out) => out.write(buf),
            Sink::File(file) => file.write(buf),
        }
    }

    fn flush(&mut self) -> io::Result<()> {
        match self {
            Sink::Stdout(out) => out.flush(),
            Sink::File(file) => file.flush(),
        }
    }
}
