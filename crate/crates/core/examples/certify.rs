//! Certify the pointlikes of the symmetric group S3 relative to abelian groups.

use pointlike::flowcert::certify_pointlikes;
use pointlike::grp::Variety;
use pointlike::{fixtures, Caps};

fn main() -> pointlike::Result<()> {
    let s = fixtures::s3();
    let run = certify_pointlikes(&s, &Variety::Abelian, &Caps::default())?;
    let c = &run.certificate;
    println!("maximal pointlikes: {:?}", c.maximal_pointlikes);
    println!(
        "certified: {} ({} states, transition semigroup of order {})",
        c.certified, c.stats.states, c.stats.transition_semigroup_size
    );
    Ok(())
}
