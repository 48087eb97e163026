#include <stdio.h>
#include "dirac_barrier.h"
int main(void){
DbConfig *cfg = db_config_reference();
DbScatteringResult s;
if (db_scatter(cfg, 7.7033320458, &s) == DB_STATUS_OK)
    printf("T^2 = %.12f\n", s.t2);
DbResonanceList *list;
db_find_resonances(cfg, 1u << DB_ZONE_CONVENTIONAL, 0.0, 0, &list);
for (size_t i = 0; i < db_resonance_list_len(list); i++) {
    DbResonance r;
    db_resonance_list_get(list, i, &r);
    printf("%u %.10f\n", r.level, r.energy);
}
db_resonance_list_free(list);
db_config_free(cfg);
}
