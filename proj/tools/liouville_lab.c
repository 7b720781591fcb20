/* Command line front end for the scenario runner.  Exit codes: 0 every claim
 * held, 1 a claim was violated or the run failed, 2 usage or bad input. */

#include <stdio.h>
#include <string.h>

#include "liouville/liouville.h"

static void usage(FILE* to) {
    fprintf(to, "usage: liouville-lab <scenario> [--config FILE] [--out DIR] [--format csv|text]\n");
    char* names = NULL;
    if (llab_scenario_names(&names) == LLAB_OK) {
        fprintf(to, "scenarios:\n");
        char* line = names;
        while (line && *line) {
            char* nl = strchr(line, '\n');
            if (nl) *nl = '\0';
            fprintf(to, "  %s\n", line);
            line = nl ? nl + 1 : NULL;
        }
        llab_string_free(names);
    }
}

int main(int argc, char** argv) {
    const char* scenario = NULL;
    const char* config = NULL;
    const char* out_dir = NULL;
    const char* format = NULL;
    int i;
    for (i = 1; i < argc; ++i) {
        const char* a = argv[i];
        if (strcmp(a, "--help") == 0 || strcmp(a, "-h") == 0) {
            usage(stdout);
            return 0;
        } else if (strcmp(a, "--config") == 0 && i + 1 < argc) {
            config = argv[++i];
        } else if (strcmp(a, "--out") == 0 && i + 1 < argc) {
            out_dir = argv[++i];
        } else if (strcmp(a, "--format") == 0 && i + 1 < argc) {
            format = argv[++i];
        } else if (a[0] == '-') {
            fprintf(stderr, "unknown or incomplete option: %s\n", a);
            usage(stderr);
            return 2;
        } else if (!scenario) {
            scenario = a;
        } else {
            fprintf(stderr, "unexpected argument: %s\n", a);
            usage(stderr);
            return 2;
        }
    }
    if (!scenario) {
        usage(stderr);
        return 2;
    }
    if (format && strcmp(format, "csv") != 0 && strcmp(format, "text") != 0) {
        fprintf(stderr, "format must be csv or text\n");
        return 2;
    }

    {
        int claims_hold = 0;
        char* violations = NULL;
        llab_status st =
            llab_run_scenario(scenario, config, out_dir, format, &claims_hold, &violations);
        if (st != LLAB_OK) {
            fprintf(stderr, "liouville-lab: %s\n", llab_last_error());
            return st == LLAB_INPUT || st == LLAB_IO ? 2 : 1;
        }
        if (claims_hold) {
            printf("%s: all claims hold\n", scenario);
        } else {
            printf("%s: claim violated\n", scenario);
            if (violations && violations[0]) fprintf(stderr, "%s\n", violations);
        }
        llab_string_free(violations);
        return claims_hold ? 0 : 1;
    }
}
