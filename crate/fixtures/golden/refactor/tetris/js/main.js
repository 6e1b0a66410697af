import {Game} from "./game.js";
console.log(new Game().describe());
