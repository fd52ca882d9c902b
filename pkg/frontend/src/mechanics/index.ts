import { registerMechanic } from "../registry.js";
import { clickToIdentifyPlugin } from "./clickToIdentify.js";
import { dragDropPlugin } from "./dragDrop.js";
import { memoryMatchPlugin } from "./memoryMatch.js";
import { sequencingPlugin } from "./sequencing.js";

export function registerBuiltinMechanics(): void {
  registerMechanic(dragDropPlugin);
  registerMechanic(clickToIdentifyPlugin);
  registerMechanic(sequencingPlugin);
  registerMechanic(memoryMatchPlugin);
}
