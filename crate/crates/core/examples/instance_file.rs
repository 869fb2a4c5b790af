//! Reading instance files and running the CLI commands in-process.

use std::path::Path;

use catdyn::cli::{cmd_classify, cmd_entropy, InstanceFile};

fn main() -> catdyn::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");

    let matrix = InstanceFile::read(&dir.join("twist_like.json"))?;
    let out = cmd_entropy(&matrix, None);
    print!("{}", out.stdout);

    let auto = InstanceFile::read(&dir.join("three_cycle.json"))?;
    let out = cmd_classify(&auto);
    print!("{}", out.stdout);
    Ok(())
}
