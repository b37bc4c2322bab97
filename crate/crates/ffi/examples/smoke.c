#include <stdio.h>
#include "gaw.h"

int main(void) {
    GawRng *rng = gaw_rng_new(1);
    double u = 0.0;
    if (gaw_rng_next_unit(rng, &u) != GAW_STATUS_OK) return 1;
    gaw_rng_free(rng);

    GawScene *scene = NULL;
    if (gaw_scene_ncorner(6, 100.0, 100.0, 10.0, 3, &scene) != GAW_STATUS_OK) return 2;
    char *svg = NULL;
    if (gaw_scene_to_svg(scene, &svg) != GAW_STATUS_OK) return 3;
    gaw_string_free(svg);
    gaw_scene_free(scene);

    double h = 0.0;
    if (gaw_entropy(NULL, 0, &h) == GAW_STATUS_OK) return 4;
    printf("%s ok %.6f\n", gaw_version(), u);
    return 0;
}
