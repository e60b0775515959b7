#include <stdio.h>
#include "le3.h"

int main(void) {
    Le3Complex z = {0.5, 0.8660254037844386};
    Le3Complex kids[3];
    if (le3_trisect(z, kids, NULL) != LE3_STATUS_OK) {
        return 1;
    }
    for (int i = 0; i < 3; i++) {
        printf("%.17g %.17g\n", kids[i].re, kids[i].im);
    }

    Le3Orbit *orbit = NULL;
    if (le3_orbit_exhaustive(z, 6, &orbit) != LE3_STATUS_OK) {
        return 1;
    }
    Le3AngleStats s;
    le3_orbit_angle_stats(orbit, &s);
    printf("%zu points, min %.17g, max %.17g\n", le3_orbit_len(orbit), s.min_angle, s.max_angle);
    le3_orbit_free(orbit);

    Le3Complex bad = {0.7, 0.1};
    if (le3_trisect(bad, kids, NULL) != LE3_STATUS_OUT_OF_SIGMA) {
        return 1;
    }
    printf("error: %s\n", le3_last_error_message());
    return 0;
}
