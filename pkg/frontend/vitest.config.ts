import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    testTimeout: 30_000,
    hookTimeout: 30_000,
    // the two suites talk to separate service instances but share a port
    // range; run files sequentially to keep logs readable
    fileParallelism: false,
  },
});
