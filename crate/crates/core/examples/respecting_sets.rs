//! Respecting edge sets of a taxon under a coloring.

use mapdd::colorcoding::Coloring;
use mapdd::solver_dbar::{brute_force_respecting, compute_respecting};
use mapdd::PhyloNetwork;

fn main() -> mapdd::Result<()> {
    let net =
        PhyloNetwork::parse("EDGE r u 1\nEDGE r w 1\nEDGE u h 2\nEDGE w h 3\nEDGE h a 1\nEDGE u b 1\nEDGE w c 1\n")?;
    let coloring = Coloring::identity(net.num_edges());
    let a = net.taxon_by_name("a").unwrap();
    let mut existing = 0;
    for c_set in 0u64..1 << net.num_edges() {
        let fast = compute_respecting(&net, &coloring, a, c_set);
        assert_eq!(fast.is_some(), brute_force_respecting(&net, &coloring, a, c_set).is_some());
        if let Some(f) = fast {
            existing += 1;
            println!("C={c_set:#09b}: weight {} edges {:?} anchors {:?}", f.weight, f.edges, f.anchors);
        }
    }
    println!("{existing} of {} color sets admit a respecting set", 1 << net.num_edges());
    Ok(())
}
