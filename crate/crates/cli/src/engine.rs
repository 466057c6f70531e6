use ringcover::cover::sigma_from_maximals;
use ringcover::{all_subrings, CoverResult, Limits, RingTable, SubringLattice};

use crate::cache::{LatticeCache, Lookup};

/// Engine settings shared by every command.
#[derive(Clone, Debug, Default)]
pub struct Engine {
    pub limits: Limits,
    pub cache: Option<LatticeCache>,
    pub seed: u64,
}

impl Engine {
    pub fn lattice(&self, ring: &RingTable) -> ringcover::Result<SubringLattice> {
        let Some(cache) = &self.cache else {
            return all_subrings(ring, self.limits.lattice_cap);
        };
        match cache.get(ring, self.seed) {
            Lookup::Hit(l) => return Ok(l),
            Lookup::Miss => {}
            Lookup::Corrupt(why) => eprintln!(
                "warning: ignoring cache file {}: {why}; recomputing",
                cache.path(ring).display()
            ),
        }
        let lattice = all_subrings(ring, self.limits.lattice_cap)?;
        if let Err(e) = cache.put(ring, &lattice) {
            eprintln!("warning: could not write cache file: {e}");
        }
        Ok(lattice)
    }

    pub fn sigma(&self, ring: &RingTable) -> ringcover::Result<CoverResult> {
        let lattice = self.lattice(ring)?;
        sigma_from_maximals(ring, &lattice.maximal_subrings(), self.limits.sigma_cap)
    }
}
