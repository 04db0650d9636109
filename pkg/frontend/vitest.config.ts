import { defineConfig } from "vitest/config";

export default defineConfig({
    test: {
        include: ["tests/**/*.test.ts"],
        environment: "node",
        testTimeout: 30000,
        // the smoke suite boots the real HTTP service in beforeAll
        hookTimeout: 120000,
    },
});
